"""How far does an isolated grain random-walk under collapse noise alone?

The collapse field kicks every nucleon; with no damping the rms distance
along one axis grows as t^{3/2}.  The geometry factor f suppresses the walk
once the body is larger than the localization length a = 1e-5 cm.
"""

from cslwalk import (CslParams, Sphere, csl_rms_translation, equilibrium_table,
                     f_sphere, vacuum_diffusion_table)

grw = CslParams.grw()

# A 1e-5 cm radius sphere walks about its own diameter in ~20 s ...
f = f_sphere(1.0).value
for t in (20.0, 1000.0, 86400.0):
    print(f"t = {t:>8.0f} s : rms displacement = "
          f"{csl_rms_translation(grw, f, t):.3g} cm")

# ... and the full radius/time grid:
print("\ncollapse-only rms displacement (cm), rows R, columns t:")
print(f"{'R (cm)':>8}  {'10 s':>9}  {'1e3 s':>9}  {'1e5 s':>9}")
for row in vacuum_diffusion_table():
    print(f"{row['R_cm']:>8.0e}  {row['dq_cm_t10']:>9.1e}  "
          f"{row['dq_cm_t1000']:>9.1e}  {row['dq_cm_t100000']:>9.1e}")

# The walk is a drift of the wavepacket *center*: the packet itself settles
# at an equilibrium width where collapse narrowing balances free spreading.
print("\nequilibrium packet width and relaxation time (density 1 g/cc):")
print(f"{'R (cm)':>8}  {'s_inf (cm)':>11}  {'tau_s (s)':>10}")
for row in equilibrium_table():
    print(f"{row['R_cm']:>8.0e}  {row['s_inf_cm']:>11.1e}  "
          f"{row['tau_s_s']:>10.2g}")

# Contrast with unobserved standard quantum mechanics: a sphere localized
# to its diameter drifts only ~hbar t / (4 R M).
from cslwalk import qm_baseline_translation

body = Sphere(radius=1e-5, density=1.0)
for t in (1000.0, 86400.0):
    qm = qm_baseline_translation(body, t)
    csl = csl_rms_translation(grw, f, t)
    print(f"\nt = {t:.0f} s: QM baseline {qm:.2g} cm vs collapse walk "
          f"{csl:.2g} cm (ratio {csl / qm:.0f})")
