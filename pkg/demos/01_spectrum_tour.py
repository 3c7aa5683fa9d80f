# %% [markdown]
# # A tour of the bound-state spectrum
#
# A Dirac particle on a cone (deficit parameter rho < 1) with a magnetic-like
# coupling omega and scalar couplings s1, s2. Every level reduces to a
# Coulomb-type radial problem with an effective angular exponent gamma and
# coupling alpha, so eps = alpha / (n_r + gamma + 1).

# %%
import numpy as np

from cosmic_dirac import ModelParams, QuantumNumbers, energy_level, spectrum_sweep
from cosmic_dirac.spectrum import asymptotic_energy

params = ModelParams(M=1.0, omega=1.0, rho=0.8, s1=0.3, s2=0.1)
qn = QuantumNumbers(m=1, k=0.5, s=1)

for lvl in spectrum_sweep(params, qn, 5):
    print(f"n_r={lvl.qn.n_r}  gamma={lvl.gamma:.6f}  eps={lvl.epsilon:.6f}  E={lvl.E:.12f}")

# %% [markdown]
# Levels pile up below sqrt(k^2 + M^2 omega^2 + (M + s2)^2), the energy of a
# free particle with the same axial momentum.

# %%
limit = asymptotic_energy(params, qn.k)
tail = spectrum_sweep(params, qn, 200)
print(f"limit {limit:.10f}, n_r=200 level {tail[-1].E:.10f}, gap {limit - tail[-1].E:.2e}")

# %% [markdown]
# Making the cone sharper (smaller rho) raises gamma and the levels move.

# %%
for rho in (1.0, 0.9, 0.7, 0.5, 0.3):
    lvl = energy_level(ModelParams(M=1.0, omega=1.0, rho=rho, s1=0.3, s2=0.1), qn)
    print(f"rho={rho:.1f}  gamma={lvl.gamma:.4f}  alpha={lvl.alpha:.4f}  E0={lvl.E:.8f}")

# %% [markdown]
# Inadmissible levels are reported with reason codes instead of exceptions,
# so sweeps never abort. Repulsive coupling gives "nonpositive-coupling", and
# s1 = 0 with j > 0 leaves the spinor transform degenerate even though the
# energy is well defined.

# %%
for p in (ModelParams(M=1, omega=1, rho=1, s1=1, s2=0), ModelParams(M=1, omega=1, rho=1, s1=0, s2=0)):
    lvl = energy_level(p, QuantumNumbers(m=0, k=0.0))
    print(p, "->", f"E={lvl.E:.6f}", lvl.reasons)
print("sqrt(17)/3 =", np.sqrt(17) / 3)
