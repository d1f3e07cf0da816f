"""
Hardware noise models and the depolarizing fit
==============================================

Two noise channels act on outcome distributions: a symmetric
depolarizing mix toward the uniform distribution, and per-qubit readout
bit flips with an arbitrary 2x2 confusion matrix.  Both only ever raise
or reshape entropies; this script shows their effect and then fits a
single depolarizing weight to the bundled measured entropy tables.
"""

from entroctx import (
    NoiseModel,
    REFERENCE_RUNS,
    apply_noise,
    cycle_contexts,
    fit_depolarizing,
    joint_distribution_fine,
    prepare_state,
    preset_config,
    resolve_observables,
    shannon_entropy,
)

config = preset_config("s1")
observables = resolve_observables(config.observable_set)
state = prepare_state(config.state)
entries = [
    (kind, key, joint_distribution_fine(state, ctx))
    for kind, key, ctx in cycle_contexts(observables, "fine")
]

# Depolarizing noise interpolates linearly toward uniform.
dist = next(d for kind, key, d in entries if key == (2, 3))
print("entropy of the X2X3 record under depolarizing noise:")
for eps in (0.0, 0.1, 0.3, 1.0):
    noisy = apply_noise(dist, NoiseModel(depolarizing_epsilon=eps))
    print(f"  eps = {eps:.1f}: H = {shannon_entropy(noisy):.6f}")

# Readout flips act per bit of the record.  An asymmetric confusion
# matrix (1 never misread, 0 misread 5% of the time) skews rather than
# flattens the distribution.
flip = NoiseModel(readout_flip=((0.95, 0.05), (0.0, 1.0)))
print(f"asymmetric readout: H {shannon_entropy(dist):.6f} -> "
      f"{shannon_entropy(apply_noise(dist, flip)):.6f}")

# How much depolarizing noise would explain the measured tables?  Fit
# the single weight eps that brings the ideal per-context entropies
# closest (least squares) to the stored measured ones.
for name, run in REFERENCE_RUNS.items():
    config = preset_config(name)
    observables = resolve_observables(config.observable_set)
    state = prepare_state(config.state)
    dists, targets = [], []
    for kind, key, ctx in cycle_contexts(observables, "fine"):
        dists.append(joint_distribution_fine(state, ctx))
        targets.append(run.h_singles[key] if kind == "single" else run.h_pairs[key])
    fit = fit_depolarizing(dists, targets)
    print(f"\nrun {name}: fitted eps = {fit.epsilon:.4f}, "
          f"residual sum of squares = {fit.residual:.4f}")

# The s2 residual is large: a single scalar knob cannot reproduce that
# table, which is itself informative -- the hardware noise there was not
# well approximated by a uniform depolarizing channel.
