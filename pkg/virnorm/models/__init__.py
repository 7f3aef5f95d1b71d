from .gauge import GaugeParams, TuplePartition
from .partition import Partition
from .verma import KacMatrix, SingularVector, VirWord

__all__ = [
    "Partition",
    "VirWord",
    "KacMatrix",
    "SingularVector",
    "GaugeParams",
    "TuplePartition",
]
