# %% [markdown]
# # Quantization on the disk and phase-space portraits
#
# The coherent states resolve the identity with a radial weight, so symbols on
# the disk map to operators. Angular integrals are exact; only u is integrated.

# %%
import numpy as np

from su11cs import RepresentationLabel
from su11cs.quantization import (
    Monomial, corrective_weight, count_crests, identity_resolution_check, lower_symbol,
    portrait_density, portrait_normalization, quantize_radial_function, radial_section,
)

lab = RepresentationLabel(2.0, 1)
print("identity diagonal:", identity_resolution_check(lab, range(6)))

# %% [markdown]
# Quantizing alpha with the corrective radial weight gives the K- ladder.

# %%
radial, pole = corrective_weight(lab)
op = quantize_radial_function(lab, Monomial.ALPHA, radial, pole, n_max=6)
n = np.arange(1, 7)
print("superdiagonal:", np.round(op.matrix[n - 1, n].real, 10))
print("sqrt(n(2k+n-1)):", np.round(np.sqrt(n * (2 * lab.kappa + n - 1)), 10))
print("lower symbol at 0.3:", lower_symbol(lab, quantize_radial_function(
    lab, Monomial.ALPHA, radial, pole, n_max=200), 0.3))

# %% [markdown]
# Portraits: a peak at beta = alpha surrounded by s crests.

# %%
for kappa, s in ((5.0, 0), (5.0, 1), (10.0, 2), (10.0, 5)):
    lab = RepresentationLabel(kappa, s)
    p = portrait_density(lab, 0.1)
    _, section = radial_section(lab, 0.1)
    print(f"kappa={kappa:g} s={s}: crests={count_crests(section)}, "
          f"peak={p.grid.max():.3f}, mass={portrait_normalization(lab, 0.1):.12f}")
