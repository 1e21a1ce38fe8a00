"""Integral quantum-group generators acting on mixed tensor space.

Generators are the weight units q^h, the divided powers of the raising and
lowering operators, and the Cartan units K_i.  Only single generators are
ever exposed as operators: a matrix commutes with an algebra exactly when it
commutes with a generating set, so commutant computations never need
products.  Divided powers are primitive data; no coefficient outside the
integer Laurent ring ever appears.

Actions: on the vector space V the divided powers of level two or more act
as zero; on the dual space a generator acts through the antipode and a
transpose; on a tensor product it acts through the comultiplication,
applied recursively factor by factor.
"""

from __future__ import annotations

import dataclasses
from typing import Union

from .laurent import ONE, LaurentPoly, ZERO
from .rep import OperatorMatrix
from .tangle import DOWN, UP, Orientation


@dataclasses.dataclass(frozen=True)
class E:
    """Divided power of the i-th raising generator."""

    i: int
    l: int = 1


@dataclasses.dataclass(frozen=True)
class F:
    """Divided power of the i-th lowering generator."""

    i: int
    l: int = 1


@dataclasses.dataclass(frozen=True)
class K:
    """The i-th Cartan unit or its inverse."""

    i: int
    sign: int = 1


@dataclasses.dataclass(frozen=True)
class QH:
    """The weight unit q^h for an integer weight vector h."""

    weight: tuple[int, ...]

    def __init__(self, weight):
        object.__setattr__(self, "weight", tuple(weight))


UGenerator = Union[E, F, K, QH]


def _validate(gen: UGenerator, n: int) -> None:
    if isinstance(gen, (E, F)):
        if not 1 <= gen.i <= n - 1:
            raise ValueError(f"generator index {gen.i} out of range 1..{n - 1}")
        if gen.l < 0:
            raise ValueError(f"divided power level must be nonnegative, got {gen.l}")
    elif isinstance(gen, K):
        if not 1 <= gen.i <= n - 1:
            raise ValueError(f"generator index {gen.i} out of range 1..{n - 1}")
        if gen.sign not in (1, -1):
            raise ValueError(f"Cartan unit sign must be +1 or -1, got {gen.sign}")
    elif isinstance(gen, QH):
        if len(gen.weight) != n:
            raise ValueError(f"weight vector length {len(gen.weight)} does not match n={n}")
    else:
        raise TypeError(f"not a generator: {gen!r}")


def _alpha_weight(i: int, n: int, multiple: int = 1) -> QH:
    """q^h equal to the multiple-th power of K_i."""
    weight = [0] * n
    weight[i - 1] = multiple
    weight[i] = -multiple
    return QH(weight)


def gen_on_V(gen: UGenerator, n: int) -> OperatorMatrix:
    """Matrix of a generator on the vector space V, rows indexing inputs.

    >>> gen_on_V(E(1), 2).entries
    {((2,), (1,)): LaurentPoly('1*q^0')}
    >>> gen_on_V(K(1), 2).entry((1,), (1,))
    LaurentPoly('1*q^1')
    >>> gen_on_V(E(1, 2), 2).is_zero()
    True
    """
    _validate(gen, n)
    boundary = (DOWN,)
    entries = {}
    if isinstance(gen, E):
        if gen.l == 0:
            return OperatorMatrix.identity(n, boundary)
        if gen.l == 1:
            entries[((gen.i + 1,), (gen.i,))] = ONE
    elif isinstance(gen, F):
        if gen.l == 0:
            return OperatorMatrix.identity(n, boundary)
        if gen.l == 1:
            entries[((gen.i,), (gen.i + 1,))] = ONE
    elif isinstance(gen, K):
        return gen_on_V(_alpha_weight(gen.i, n, gen.sign), n)
    else:
        for j in range(1, n + 1):
            entries[((j,), (j,))] = LaurentPoly.monomial(1, gen.weight[j - 1])
    return OperatorMatrix(n, boundary, boundary, entries)


def _antipode_on_V(gen: UGenerator, n: int) -> OperatorMatrix:
    """Matrix on V of the antipode image of a generator."""
    if isinstance(gen, E):
        if gen.l == 0:
            return OperatorMatrix.identity(n, (DOWN,))
        mat = gen_on_V(_alpha_weight(gen.i, n, gen.l), n).matmul(gen_on_V(gen, n))
        return mat.scaled(LaurentPoly.monomial((-1) ** gen.l, gen.l * (gen.l - 1)))
    if isinstance(gen, F):
        if gen.l == 0:
            return OperatorMatrix.identity(n, (DOWN,))
        mat = gen_on_V(gen, n).matmul(gen_on_V(_alpha_weight(gen.i, n, -gen.l), n))
        return mat.scaled(LaurentPoly.monomial((-1) ** gen.l, -gen.l * (gen.l - 1)))
    if isinstance(gen, K):
        return gen_on_V(K(gen.i, -gen.sign), n)
    return gen_on_V(QH(tuple(-w for w in gen.weight)), n)


def gen_on_Vdual(gen: UGenerator, n: int) -> OperatorMatrix:
    """Matrix of a generator on the dual space, in the dual basis: the
    transpose of the antipode image acting on V.

    >>> gen_on_Vdual(K(1), 2).entry((1,), (1,))
    LaurentPoly('1*q^-1')
    >>> gen_on_Vdual(E(1), 2).entries
    {((1,), (2,)): LaurentPoly('-1*q^-1')}
    """
    _validate(gen, n)
    base = _antipode_on_V(gen, n)
    return OperatorMatrix(n, (UP,), (UP,), {(c, r): v for (r, c), v in base.entries.items()})


def _word_matrix(gens, boundary: tuple[Orientation, ...], n: int) -> OperatorMatrix:
    """Matrix of a product of generators: the rightmost factor acts first."""
    out = OperatorMatrix.identity(n, boundary)
    for gen in reversed(tuple(gens)):
        out = out.matmul(gen_on_mixed(gen, boundary, n))
    return out


def gen_on_mixed(gen: UGenerator, boundary, n: int) -> OperatorMatrix:
    """Matrix of a generator on the tensor space of an oriented boundary,
    built by splitting the factors in half and comultiplying.

    >>> v22 = gen_on_mixed(E(1), (DOWN, DOWN), 2).entries
    >>> v22[((2, 2), (1, 2))], v22[((2, 2), (2, 1))]
    (LaurentPoly('1*q^1'), LaurentPoly('1*q^0'))
    """
    boundary = tuple(boundary)
    _validate(gen, n)
    if isinstance(gen, (E, F)) and gen.l == 0:
        return OperatorMatrix.identity(n, boundary)
    if len(boundary) == 0:
        value = ONE if isinstance(gen, (K, QH)) else ZERO
        return OperatorMatrix(n, (), (), {((), ()): value} if not value.is_zero() else {})
    if len(boundary) == 1:
        if boundary[0] is DOWN:
            return gen_on_V(gen, n)
        return gen_on_Vdual(gen, n)
    mid = len(boundary) // 2
    return _split_action(gen, boundary[:mid], boundary[mid:], n)


def _split_action(
    gen: UGenerator, left: tuple[Orientation, ...], right: tuple[Orientation, ...], n: int
) -> OperatorMatrix:
    """Comultiply one generator across an explicit two-part split."""
    if isinstance(gen, (K, QH)):
        return gen_on_mixed(gen, left, n).kron(gen_on_mixed(gen, right, n))
    i, l = gen.i, gen.l
    total = OperatorMatrix(n, left + right, left + right)
    for k in range(l + 1):
        if isinstance(gen, E):
            coeff = LaurentPoly.monomial(1, k * (l - k))
            left_mat = _word_matrix((E(i, l - k),), left, n)
            right_mat = _word_matrix((_alpha_weight(i, n, k - l), E(i, k)), right, n)
        else:
            coeff = LaurentPoly.monomial(1, -k * (l - k))
            left_mat = _word_matrix((F(i, l - k), _alpha_weight(i, n, k)), left, n)
            right_mat = _word_matrix((F(i, k),), right, n)
        total = total + left_mat.kron(right_mat).scaled(coeff)
    return total


# -- the divided-power compatibility identities -------------------------------


@dataclasses.dataclass(frozen=True)
class DivPowerReport:
    i: int
    l: int
    left: tuple[Orientation, ...]
    right: tuple[Orientation, ...]
    n: int
    raising_identity_holds: bool
    lowering_identity_holds: bool

    @property
    def all_pass(self) -> bool:
        return self.raising_identity_holds and self.lowering_identity_holds

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "l": self.l,
            "left": "".join(o.value for o in self.left),
            "right": "".join(o.value for o in self.right),
            "n": self.n,
            "raisingIdentityHolds": self.raising_identity_holds,
            "loweringIdentityHolds": self.lowering_identity_holds,
            "allPass": self.all_pass,
        }


def _sum_terms(terms, left, right, n) -> OperatorMatrix:
    """Evaluate a list of (coefficient, left word, right word) tensor terms."""
    total = OperatorMatrix(n, left + right, left + right)
    for coeff, left_gens, right_gens in terms:
        term = _word_matrix(left_gens, left, n).kron(_word_matrix(right_gens, right, n))
        total = total + term.scaled(coeff)
    return total


def check_divpowers(i: int, l: int, left, right, n: int) -> DivPowerReport:
    """Verify the two telescoping identities that move a divided power from
    one tensor leg to the other, as exact operator identities on the tensor
    space of the two boundaries.

    >>> check_divpowers(1, 1, (DOWN,), (DOWN,), 2).all_pass
    True
    """
    if l < 1:
        raise ValueError(f"level must be at least 1, got {l}")
    left = tuple(left)
    right = tuple(right)

    def sign(k: int) -> int:
        return -1 if k % 2 else 1

    raising_lhs = []
    for k in range(l):
        for j in range(l - k + 1):
            coeff = LaurentPoly.monomial(sign(k), k * (l - 1) + j * (l - k - j))
            left_word = (E(i, k), E(i, l - k - j))
            right_word = (_alpha_weight(i, n, j - l), E(i, j))
            raising_lhs.append((coeff, left_word, right_word))
    raising_rhs = [
        (ONE, (), (E(i, l),)),
        (LaurentPoly.monomial(-sign(l), l * (l - 1)), (E(i, l),), (_alpha_weight(i, n, -l),)),
    ]

    lowering_lhs = []
    for k in range(l):
        for j in range(l - k + 1):
            coeff = LaurentPoly.monomial(sign(k), -k * (l - 1) - j * (l - k - j))
            left_word = (F(i, k), F(i, l - k - j), _alpha_weight(i, n, j))
            right_word = (F(i, j),)
            lowering_lhs.append((coeff, left_word, right_word))
    lowering_rhs = [
        (ONE, (_alpha_weight(i, n, l),), (F(i, l),)),
        (LaurentPoly.monomial(-sign(l), -l * (l - 1)), (F(i, l),), ()),
    ]

    return DivPowerReport(
        i,
        l,
        left,
        right,
        n,
        raising_identity_holds=_sum_terms(raising_lhs, left, right, n)
        == _sum_terms(raising_rhs, left, right, n),
        lowering_identity_holds=_sum_terms(lowering_lhs, left, right, n)
        == _sum_terms(lowering_rhs, left, right, n),
    )
