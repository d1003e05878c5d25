"""Symmetric functions over Q(q^(1/2), t^(1/2)) with exact coefficients."""

from .combinat import (Partition, partitions, conjugate, n_stat, zee, sign, chi,
                         dominates, hook_count)
from .core import (SymRing, SymF, DegreeBoundError, DEFAULT, hall, qt_inner, qt_weight,
                   BASES)
from .alphabet import Alphabet, plethysm, omega_exp
from .macdonald import macdonald, nabla, nabla_eigenvalue, B_mu, c_J


def convert(f, basis):
    return f.convert(basis)


def omega(f):
    return f.omega()


__all__ = [
    "Partition", "partitions", "conjugate", "n_stat", "zee", "sign", "chi", "dominates",
    "hook_count", "SymRing", "SymF", "DegreeBoundError", "DEFAULT", "hall", "qt_inner",
    "qt_weight", "BASES", "Alphabet", "plethysm", "omega_exp", "macdonald", "nabla",
    "nabla_eigenvalue", "B_mu", "c_J", "convert", "omega",
]
