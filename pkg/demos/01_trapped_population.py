"""
Population trapping at a photonic band edge
===========================================

A level detuned from the edge of a photonic band gap never fully decays:
part of it stays bound in a photon-atom dressed state. This script computes
that trapped fraction three ways and watches the survival curve settle on it.
"""
import numpy as np

from antizeno import SpectralModel, asymptotic_survival, build_expansion, survival_p
from antizeno.model import find_poles

# The band-edge model has one parameter besides the detuning (gamma, set to 1,
# so times are in units of 1/gamma).
for delta in (-1.0, 0.0, 1.0):
    model = SpectralModel.band_edge(delta)
    exp = build_expansion(model)
    pf = asymptotic_survival(model)

    # the same number from the bound-state residue of the resolvent
    (bound,) = find_poles(model).bound
    print(f"delta={delta:+.0f}  p_f={pf:.6f}  |residue|^2={abs(bound.residue) ** 2:.6f}"
          f"  bound level z={bound.location:.4f}")

# %%
# Survival against time: a fast initial drop, damped Rabi-like ringing, then
# a plateau at p_f.
t = np.linspace(0, 30, 7)
for delta in (-1.0, 0.0, 1.0):
    p = survival_p(build_expansion(SpectralModel.band_edge(delta)), t).p
    print(f"delta={delta:+.0f}  " + "  ".join(f"{v:.4f}" for v in p))

# %%
# Trapping weakens smoothly as the level moves up into the band.
deltas = np.linspace(-2, 4, 7)
pf = [asymptotic_survival(SpectralModel.band_edge(d)) for d in deltas]
for d, v in zip(deltas, pf):
    print(f"delta={d:+.1f}  p_f={v:.4f}")
