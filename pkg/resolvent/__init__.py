from .mirror import MirrorData, mirror_data, proof_prefactor, scholz_gate, theorem_prefactor
