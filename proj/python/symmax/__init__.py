"""Nonassociative symmetric-maximum calculus.

Evaluation of sequences under computation rules, canonical forms and
equivalence of rules, the deletion order on rules (with witnesses), the
label-rule sublattice, and brute-force bracketing oracles.
"""

try:  # installed wheel: extension lives inside the package
    from . import _symmax as _impl
except ImportError:  # in-tree: extension on PYTHONPATH from the build dir
    import _symmax as _impl

ParseError = _impl.ParseError
NotWellFormed = _impl.NotWellFormed
NotMadeAssociative = _impl.NotMadeAssociative

symmax = _impl.symmax
evaluate = _impl.evaluate
encode = _impl.encode
canonical = _impl.canonical
well_formed = _impl.well_formed
equivalent = _impl.equivalent
compare = _impl.compare
kernel_compare = _impl.kernel_compare
classify = _impl.classify
achievable = _impl.achievable
meet = _impl.meet
join = _impl.join
interval = _impl.interval
extraction_rule = _impl.extraction_rule
registry = _impl.registry

__all__ = [
    "NotMadeAssociative",
    "NotWellFormed",
    "ParseError",
    "achievable",
    "canonical",
    "classify",
    "compare",
    "encode",
    "equivalent",
    "evaluate",
    "extraction_rule",
    "interval",
    "join",
    "kernel_compare",
    "meet",
    "registry",
    "symmax",
    "well_formed",
]
