"""
Nearest-subspace classification in transform space
==================================================

Classes built from translations and dilations of a template are curved
manifolds in signal space but exact two-dimensional affine sets in
transform space, so a nearest-subspace classifier separates them there.
The same classifier on raw samples has to approximate a curved set with a
flat one and misclassifies.
"""

import numpy as np

from ottk import cdt_forward
from ottk.measures import Grid1D
from ottk.subspace import classify, fit_nearest_subspace
from ottk.synth import bump_templates, deformed_template, sample_deformations

grid = Grid1D(-4.0, 4.0, 1024)
m = 256
rng = np.random.default_rng(42)

train_T, train_raw, labels = [], [], []
for cls in range(3):
    omegas, taus = sample_deformations(rng, 10)
    for om, ta in zip(omegas, taus):
        dens = deformed_template(grid, cls, om, ta)
        train_T.append(cdt_forward(dens, m).values)
        train_raw.append(dens.values)
        labels.append(cls)
labels = np.array(labels)

model_T = fit_nearest_subspace(train_T, labels, dim=2)
model_raw = fit_nearest_subspace(train_raw, labels, dim=2)

hits_T = hits_raw = total = 0
for cls in range(3):
    omegas, taus = sample_deformations(rng, 100)
    for om, ta in zip(omegas, taus):
        dens = deformed_template(grid, cls, om, ta)
        total += 1
        hits_T += classify(model_T, cdt_forward(dens, m).values) == cls
        hits_raw += classify(model_raw, dens.values) == cls

print(f"templates: {len(bump_templates(grid))} classes, "
      f"{total} test draws with random (omega, tau)")
print(f"transform-space accuracy: {hits_T / total:6.1%}")
print(f"raw-signal accuracy:      {hits_raw / total:6.1%}")
