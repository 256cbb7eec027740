# %% [markdown]
# # Coherent states as displaced number states
#
# exp(rho K+ - conj(rho) K-) applied to |s> on a truncated Fock space gives the
# closed-form coefficients at alpha = tanh|rho| e^{i arg rho}.

# %%
import cmath

import numpy as np

from su11cs import RepresentationLabel
from su11cs.errors import TruncationError
from su11cs.quantization import displacement_from_quantized
from su11cs.squeezing import displacement_operator
from su11cs.states import DiskAmplitude, GlauberFamily, SU11Family

lab = RepresentationLabel(3.0, 2)
rho = 0.8 * cmath.exp(0.3j)
u = displacement_operator(lab, rho, 300)
ref = SU11Family(lab).coefficients(DiskAmplitude.from_rapidity(rho).alpha, 300)
print("max deviation:", np.max(np.abs(u.matrix[:, lab.s] - ref)))

# %% [markdown]
# Too small a truncation is refused rather than returned silently.

# %%
try:
    displacement_operator(RepresentationLabel(10.0, 5), 1.5, 100)
except TruncationError as exc:
    print("refused:", exc)

# %% [markdown]
# Building the displacement from quantized ladder operators instead: the
# Glauber family gives back the Glauber state, the corrected SU(1,1) pair
# gives the SU(1,1) state at rapidity b.

# %%
b = 1.0 + 0.5j
glauber = displacement_from_quantized(GlauberFamily(), b, 120).coeffs
print("Glauber:", np.max(np.abs(glauber - GlauberFamily().coefficients(b, 120))))
b = 0.4
su11 = displacement_from_quantized(RepresentationLabel(3.0), b, 200).coeffs
print("SU(1,1):", np.max(np.abs(su11 - displacement_operator(RepresentationLabel(3.0), b, 200)
                                .matrix[:, 0])))
