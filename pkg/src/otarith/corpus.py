"""Bundled input documents: x^3 + m x - 1 for m = 1..10, and x^4 - 2.

The power basis is maximal for every m except m = 8 (not 5-maximal) and m = 9
(not 3-maximal); those documents carry an enlarged integral basis.
"""

from fractions import Fraction

from .document import DEFAULT_OPTIONS, InputDocument

_ENLARGED = {
    # (theta^2 - 7 theta + 12) / 5 = (theta - 3)(theta - 4) / 5
    8: [[1, 0, 0], [0, 1, 0], [Fraction(12, 5), Fraction(-7, 5), Fraction(1, 5)]],
    # (theta - 1)^2 / 3
    9: [[1, 0, 0], [0, 1, 0], [Fraction(1, 3), Fraction(-2, 3), Fraction(1, 3)]],
}


def family_document(m):
    doc = InputDocument([-1, m, 0, 1], integral_basis=_ENLARGED.get(m))
    doc.subgroup = [[0, 1, 0]]
    doc.modulus = {"from_subgroup": True, "finite_generators": None, "real_places": "all"}
    doc.options = dict(DEFAULT_OPTIONS)
    doc.name = f"cubic_m{m}"
    return doc


def quartic_document():
    doc = InputDocument([-2, 0, 0, 0, 1])
    # O^{x,+} = <(1 + theta)^2, 1 + theta^2>
    doc.units = [[1, 2, 1, 0], [1, 0, 1, 0]]
    doc.provenance = "input"
    doc.subgroup = [[1, 2, 1, 0], [1, 0, 1, 0]]
    doc.modulus = {"from_subgroup": True, "finite_generators": None, "real_places": "all"}
    doc.options = dict(DEFAULT_OPTIONS)
    doc.name = "quartic_2"
    return doc


def corpus():
    return [family_document(m) for m in range(1, 11)] + [quartic_document()]
