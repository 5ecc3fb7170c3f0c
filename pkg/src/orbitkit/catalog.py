"""The example groups used throughout: bases are listed in strong Malcev order."""

from __future__ import annotations

from .algebra import LieAlgebra

__all__ = [
    "heisenberg",
    "upper_triangular_4",
    "gl10_two_step",
    "five_dim",
    "free_two_step_3",
    "abelian",
    "CATALOG",
]


def heisenberg() -> LieAlgebra:
    """[X3, X2] = X1."""
    return LieAlgebra.from_brackets(("X1", "X2", "X3"), {("X3", "X2"): {"X1": 1}})


def upper_triangular_4() -> LieAlgebra:
    """Strictly upper triangular 4x4 matrices: Z=E14, Y1=E13, Y2=E24, U1=E12, U2=E23, U3=E34."""
    names = ("Z", "Y1", "Y2", "U1", "U2", "U3")
    return LieAlgebra.from_brackets(
        names,
        {
            ("U1", "U2"): {"Y1": 1},
            ("U3", "U2"): {"Y2": -1},
            ("U1", "Y2"): {"Z": 1},
            ("U3", "Y1"): {"Z": -1},
        },
    )


def gl10_two_step() -> LieAlgebra:
    """Nine-dimensional two-step algebra realized inside gl(10); [X_i, Y_j] lands in the Z's."""
    names = ("Z1", "Z2", "Z3", "Y1", "Y2", "Y3", "X1", "X2", "X3")
    table = {
        ("X1", "Y1"): "Z1", ("X1", "Y2"): "Z2", ("X1", "Y3"): "Z3",
        ("X2", "Y1"): "Z2", ("X2", "Y2"): "Z3", ("X2", "Y3"): "Z2",
        ("X3", "Y1"): "Z3", ("X3", "Y2"): "Z1", ("X3", "Y3"): "Z1",
    }
    return LieAlgebra.from_brackets(names, {k: {v: 1} for k, v in table.items()})


def five_dim() -> LieAlgebra:
    """Basis Z1, Z2, X1, X2, Y with [X_i, Y] = Z_i."""
    names = ("Z1", "Z2", "X1", "X2", "Y")
    return LieAlgebra.from_brackets(names, {("X1", "Y"): {"Z1": 1}, ("X2", "Y"): {"Z2": 1}})


def free_two_step_3() -> LieAlgebra:
    """Free two-step nilpotent algebra on Z1, Z2, Z3 with [Z_i, Z_j] = Z_ij for i < j."""
    names = ("Z23", "Z13", "Z12", "Z3", "Z2", "Z1")
    return LieAlgebra.from_brackets(
        names,
        {("Z1", "Z2"): {"Z12": 1}, ("Z1", "Z3"): {"Z13": 1}, ("Z2", "Z3"): {"Z23": 1}},
    )


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


CATALOG = {
    "heisenberg": heisenberg,
    "upper4": upper_triangular_4,
    "gl10": gl10_two_step,
    "five": five_dim,
    "free2step3": free_two_step_3,
}
