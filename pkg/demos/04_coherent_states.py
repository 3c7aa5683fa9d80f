# %% [markdown]
# # Perelomov coherent states of the radial problem
#
# Displacing the lowest Sturmian state gives a geometric series over Fock
# states. The Laguerre generating function resums it into a single
# exponential whose decay rate grows as the parameter xi approaches 1.

# %%
import numpy as np

from cosmic_dirac import CoherentParams, ModelParams, QuantumNumbers, coherent_radial, coherent_spinor, perelomov_fock

params = ModelParams(M=1.0, omega=1.0, rho=0.8, s1=0.3, s2=0.1)
qn = QuantumNumbers(m=1, k=0.5)
r = np.linspace(0.1, 10, 200)

for xi in (0.0, 0.1, 0.3, 0.5):
    cp = CoherentParams(xi, params, qn, truncation_N=200)
    closed, series = coherent_radial(cp, r), coherent_radial(cp, r, "series")
    dev = np.max(np.abs(series.F / closed.F - 1))
    print(f"xi={xi:.1f}  decay rate / eps = {closed.decay_rate / cp.level.epsilon:.4f}  series vs closed {dev:.1e}")

# %% [markdown]
# The Fock amplitudes are normalized for any |xi| < 1.

# %%
c = perelomov_fock(2.9, 0.4 * np.exp(0.8j), 100)
print("sum |c_s|^2 - 1 =", np.sum(np.abs(c) ** 2) - 1)
print("first amplitudes:", np.round(np.abs(c[:5]), 6))

# %% [markdown]
# The normalized physical spinor. Its amplitude C from quadrature matches
# the closed form.

# %%
sp = coherent_spinor(CoherentParams(0.3, params, qn), r)
print(f"C quadrature {sp.C_n_quadrature:.15e}, closed form {sp.C_n_closed_form:.15e}")
i = np.argmax(np.abs(sp.F_plus))
print(f"peak of F+ at r = {r[i]:.2f}")
