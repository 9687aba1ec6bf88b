"""spikearm: hierarchical spiking-network motion control for a 7-DOF arm.

Layout mirrors the control hierarchy: a reflex torque lane at 1 kHz
(`spinal`), adaptive gain and pattern-blending lanes at 100 Hz
(`brainstem`, `thalamus`), pre-trained gravity-compensation patterns at
20 Hz (`cerebellum`), all sequenced by `scheduler` against the rigid-body
plant in `dynamics`.
"""

__version__ = "0.1.0"

N_JOINTS = 7
