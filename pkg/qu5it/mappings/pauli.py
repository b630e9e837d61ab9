"""Pauli strings, Pauli sums and ladder-letter sums over qubit registers.

Qubit 0 is the leftmost letter and the most significant bit of a register
index. Ladder letters are

    +  |0><1| = (X + iY)/2        -  |1><0| = (X - iY)/2
    0  |0><0| = (I + Z)/2         1  |1><1| = (I - Z)/2

together with the Pauli letters I, X, Y, Z.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import numpy as np
from scipy import sparse

from qu5it.config import settings
from qu5it.errors import DomainError, Qu5itError

logger = logging.getLogger(__name__)

PAULI_LETTERS = "IXYZ"
LADDER_LETTERS = "IXYZ+-01"
SIGMA_LETTERS = "XY+-"
PROJECTOR_LETTERS = "01"

Number = Union[int, float, complex]

# (a, b) -> (phase, c) with a.b = phase * c
_PRODUCT: Dict[Tuple[str, str], Tuple[complex, str]] = {}
for _p in PAULI_LETTERS:
    _PRODUCT[("I", _p)] = (1, _p)
    _PRODUCT[(_p, "I")] = (1, _p)
    _PRODUCT[(_p, _p)] = (1, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT[(_a, _b)] = (1j, _c)
    _PRODUCT[(_b, _a)] = (-1j, _c)

_LADDER_EXPANSION: Dict[str, Dict[str, complex]] = {
    "I": {"I": 1},
    "X": {"X": 1},
    "Y": {"Y": 1},
    "Z": {"Z": 1},
    "+": {"X": 0.5, "Y": 0.5j},
    "-": {"X": 0.5, "Y": -0.5j},
    "0": {"I": 0.5, "Z": 0.5},
    "1": {"I": 0.5, "Z": -0.5},
}
_LADDER_ADJOINT = {"+": "-", "-": "+"}


def _check_letters(letters: str, alphabet: str):
    if not letters:
        raise DomainError("letter strings must cover at least one qubit")
    bad = set(letters) - set(alphabet)
    if bad:
        raise DomainError(f"invalid letters {sorted(bad)} in {letters!r}, expected {alphabet!r}")


@dataclass(frozen=True)
class PauliAction:
    """A Pauli string as a signed permutation: P|idx> = phase[idx] |perm[idx]>."""

    letters: str
    perm: np.ndarray
    phase: np.ndarray


def pauli_action(letters: str) -> PauliAction:
    _check_letters(letters, PAULI_LETTERS)
    nq = len(letters)
    idx = np.arange(1 << nq, dtype=np.int64)
    perm = idx.copy()
    phase = np.ones(idx.size, dtype=np.complex128)
    for q in range(nq):
        op = letters[nq - 1 - q]
        if op == "I":
            continue
        sign = 1 - 2 * ((idx >> q) & 1)
        if op == "X":
            perm ^= 1 << q
        elif op == "Y":
            perm ^= 1 << q
            phase *= 1j * sign
        else:
            phase *= sign
    return PauliAction(letters, perm, phase)


@dataclass(frozen=True)
class PauliTerm:
    """Real coefficient times a Pauli string."""

    coefficient: float
    letters: str

    def __post_init__(self):
        if not np.isfinite(self.coefficient):
            raise DomainError(f"Pauli coefficient must be finite, got {self.coefficient}")
        _check_letters(self.letters, PAULI_LETTERS)

    @property
    def weight(self) -> int:
        return sum(1 for ch in self.letters if ch != "I")

    @property
    def is_diagonal(self) -> bool:
        return set(self.letters) <= {"I", "Z"}

    def to_line(self) -> str:
        return f"{self.coefficient!r} {self.letters}"


class PauliSum:
    """
    Linear combination of Pauli strings on a fixed number of qubits.

    Stored as a coefficient map keyed by letter string. Arithmetic returns new
    sums; canonicalization happens in simplify().
    """

    def __init__(self, terms: Optional[Mapping[str, Number]] = None, n_qubits: Optional[int] = None):
        self._terms: Dict[str, complex] = {}
        self.n_qubits = n_qubits
        for letters, coefficient in (terms or {}).items():
            self._add(letters, complex(coefficient))

    def _add(self, letters: str, coefficient: complex):
        _check_letters(letters, PAULI_LETTERS)
        if self.n_qubits is None:
            self.n_qubits = len(letters)
        elif len(letters) != self.n_qubits:
            raise DomainError(f"Pauli string {letters!r} does not act on {self.n_qubits} qubits")
        self._terms[letters] = self._terms.get(letters, 0) + coefficient

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Number, str]]) -> "PauliSum":
        out = cls()
        for coefficient, letters in terms:
            out._add(letters, complex(coefficient))
        return out

    @classmethod
    def identity(cls, n_qubits: int, coefficient: Number = 1.0) -> "PauliSum":
        return cls({"I" * n_qubits: coefficient})

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[str, complex]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, letters: str) -> complex:
        return self._terms.get(letters, 0)

    def copy(self) -> "PauliSum":
        return PauliSum(dict(self._terms), self.n_qubits)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        out = self.copy()
        for letters, coefficient in other._terms.items():
            out._add(letters, coefficient)
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other * -1

    def __neg__(self) -> "PauliSum":
        return self * -1

    def __mul__(self, other: Union[Number, "PauliSum"]) -> "PauliSum":
        if isinstance(other, PauliSum):
            return self.product(other)
        return PauliSum({k: v * other for k, v in self._terms.items()}, self.n_qubits)

    __rmul__ = __mul__

    def product(self, other: "PauliSum") -> "PauliSum":
        """Operator product self @ other."""
        if self.n_qubits != other.n_qubits:
            raise DomainError(f"cannot multiply sums on {self.n_qubits} and {other.n_qubits} qubits")
        out = PauliSum(n_qubits=self.n_qubits)
        for (a, ca), (b, cb) in itertools.product(self._terms.items(), other._terms.items()):
            phase: complex = 1
            letters = []
            for pa, pb in zip(a, b):
                step, c = _PRODUCT[(pa, pb)]
                phase *= step
                letters.append(c)
            out._add("".join(letters), phase * ca * cb)
        return out

    def tensor(self, other: "PauliSum") -> "PauliSum":
        out = PauliSum(n_qubits=(self.n_qubits or 0) + (other.n_qubits or 0))
        for (a, ca), (b, cb) in itertools.product(self._terms.items(), other._terms.items()):
            out._add(a + b, ca * cb)
        return out

    def adjoint(self) -> "PauliSum":
        return PauliSum({k: np.conj(v) for k, v in self._terms.items()}, self.n_qubits)

    def simplify(self, tolerance: Optional[float] = None) -> "PauliSum":
        """Sorted copy with coefficients at or below ``tolerance`` dropped."""
        tol = settings.pauli_zero_tolerance if tolerance is None else tolerance
        kept = {k: v for k, v in sorted(self._terms.items()) if abs(v) > tol}
        return PauliSum(kept, self.n_qubits)

    def hermiticity_deviation(self) -> float:
        imag = [abs(v.imag) for v in self._terms.values()]
        return max(imag, default=0.0)

    def terms(self, tolerance: float = 1e-12) -> List[PauliTerm]:
        """
        Canonical real terms of a Hermitian sum.

        Raises:
            Qu5itError: If a coefficient keeps an imaginary part above tolerance
        """
        out = []
        for letters, coefficient in self.simplify():
            if abs(coefficient.imag) > tolerance:
                raise Qu5itError(f"term {letters} has complex coefficient {coefficient}; sum is not Hermitian")
            out.append(PauliTerm(float(coefficient.real), letters))
        return out

    def to_sparse(self) -> sparse.csr_matrix:
        if self.n_qubits is None:
            raise DomainError("empty Pauli sum has no qubit count")
        dim = 1 << self.n_qubits
        rows, cols, data = [], [], []
        cols_all = np.arange(dim, dtype=np.int64)
        for letters, coefficient in self._terms.items():
            if coefficient == 0:
                continue
            action = pauli_action(letters)
            rows.append(action.perm)
            cols.append(cols_all)
            data.append(coefficient * action.phase)
        if not data:
            return sparse.csr_matrix((dim, dim), dtype=np.complex128)
        matrix = sparse.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
        ).tocsr()
        matrix.sum_duplicates()
        return matrix

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def to_text(self) -> str:
        return "".join(term.to_line() + "\n" for term in self.terms())

    @classmethod
    def from_text(cls, text: str) -> "PauliSum":
        """Parse ``coefficient letters`` lines; blank lines and ``#`` comments are skipped."""
        out = cls()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise DomainError(f"line {number}: expected 'coefficient letters', got {raw!r}")
            try:
                coefficient = float(fields[0].replace("−", "-"))
            except ValueError:
                raise DomainError(f"line {number}: bad coefficient {fields[0]!r}") from None
            out._add(fields[1], coefficient)
        return out

    def __repr__(self) -> str:
        return f"PauliSum(n_qubits={self.n_qubits}, terms={len(self)})"


@dataclass(frozen=True)
class LadderTerm:
    """Coefficient times a product of per-qubit ladder letters."""

    coefficient: complex
    letters: str

    def __post_init__(self):
        _check_letters(self.letters, LADDER_LETTERS)

    def adjoint(self) -> "LadderTerm":
        letters = "".join(_LADDER_ADJOINT.get(ch, ch) for ch in self.letters)
        return LadderTerm(np.conj(self.coefficient), letters)

    def positions(self, alphabet: str) -> Tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.letters) if ch in alphabet)

    @property
    def signature(self) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
        """(sigma positions, projector positions, Z positions)."""
        return self.positions(SIGMA_LETTERS), self.positions(PROJECTOR_LETTERS), self.positions("Z")

    def expand(self) -> PauliSum:
        factors = [_LADDER_EXPANSION[ch] for ch in self.letters]
        out = PauliSum(n_qubits=len(self.letters))
        for combo in itertools.product(*(f.items() for f in factors)):
            coefficient = complex(self.coefficient)
            for _, c in combo:
                coefficient *= c
            out._add("".join(p for p, _ in combo), coefficient)
        return out


class LadderSum:
    """Sum of ladder terms; the authoring format for mapped operators."""

    def __init__(self, terms: Iterable[Union[LadderTerm, Tuple[Number, str]]] = ()):
        self.terms: List[LadderTerm] = []
        for term in terms:
            if not isinstance(term, LadderTerm):
                term = LadderTerm(complex(term[0]), term[1])
            if self.terms and len(term.letters) != self.n_qubits:
                raise DomainError(f"ladder string {term.letters!r} does not act on {self.n_qubits} qubits")
            if term.coefficient != 0:
                self.terms.append(term)

    @property
    def n_qubits(self) -> Optional[int]:
        return len(self.terms[0].letters) if self.terms else None

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[LadderTerm]:
        return iter(self.terms)

    def __add__(self, other: "LadderSum") -> "LadderSum":
        return LadderSum(self.terms + other.terms)

    def __mul__(self, scalar: Number) -> "LadderSum":
        return LadderSum(LadderTerm(t.coefficient * scalar, t.letters) for t in self.terms)

    __rmul__ = __mul__

    def adjoint(self) -> "LadderSum":
        return LadderSum(t.adjoint() for t in self.terms)

    def embed(self, offset: int, total: int) -> "LadderSum":
        """Pad every string with identities to sit at ``offset`` in a ``total``-qubit register."""
        width = self.n_qubits or 0
        if offset < 0 or offset + width > total:
            raise DomainError(f"cannot place {width} qubits at offset {offset} in {total}")
        pad_left, pad_right = "I" * offset, "I" * (total - offset - width)
        return LadderSum(LadderTerm(t.coefficient, pad_left + t.letters + pad_right) for t in self.terms)

    def join(self, other: "LadderSum") -> "LadderSum":
        """Product of two sums on the same register whose strings never overlap."""
        out = []
        for a, b in itertools.product(self.terms, other.terms):
            letters = []
            for la, lb in zip(a.letters, b.letters):
                if la != "I" and lb != "I":
                    raise DomainError(f"ladder strings {a.letters!r} and {b.letters!r} overlap")
                letters.append(lb if la == "I" else la)
            out.append(LadderTerm(a.coefficient * b.coefficient, "".join(letters)))
        return LadderSum(out)

    def tensor(self, other: "LadderSum") -> "LadderSum":
        total = (self.n_qubits or 0) + (other.n_qubits or 0)
        return self.embed(0, total).join(other.embed(self.n_qubits or 0, total))

    def expand(self) -> PauliSum:
        out = PauliSum(n_qubits=self.n_qubits)
        for term in self.terms:
            out = out + term.expand()
        return out.simplify()

    def to_sparse(self) -> sparse.csr_matrix:
        return self.expand().to_sparse()
