"""
MODELS
======
Models are the objects opgraph computes with: operator systems and their effect bases, quantum channels in Kraus form
and the operator graphs extracted from channels.

"""
from .operator_system import (OperatorSystem, EffectBasis, DUAN, GEOMETRIC, KINDS, duan_effect_basis,
                              geometric_effect_sequence, effect_basis, qc_map, random_system, failed_checks)
from .channel import (QuantumChannel, synthesize_channel, random_channel, identity_channel, depolarizing_channel,
                      trace_preservation_residual)
from .graph import (GraphExtraction, RoundTripReport, operator_graph, graph_via_dual_complementary, verify_round_trip,
                    zero_error_distinguishable, confusability_pairs, kraus_orthogonality_residual)
