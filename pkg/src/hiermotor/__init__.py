"""Hierarchical motor control on a simulated planar walker.

The library is organized in layers:

* ``hiermotor.nn``        -- minimal float64 neural-net toolkit (tape autodiff,
  MLP/LSTM, Adam, deterministic counter-based RNG, checkpoints).
* ``hiermotor.sim``       -- planar articulated-walker physics, arena heading,
  ray sensor, rolling-ball baseline body.
* ``hiermotor.clips``     -- synthetic kinematic reference clips and transforms.
* ``hiermotor.tracking``  -- tracking energy/reward and proprioceptive features.
* ``hiermotor.lowlevel``  -- clip-tracking policies, BC pretraining, off-policy
  RL, steerable/switching controllers, control fragments.
* ``hiermotor.highlevel`` -- shared encoder+LSTM agents: discrete fragment
  selection, steering head, query-based selection, flat baseline, saliency.
* ``hiermotor.tasks``     -- the five task environments.
* ``hiermotor.harness``   -- replay, actors/learner, configs, CLI, analysis.
"""

__version__ = "0.1.0"
