"""Elementary near-vector spaces over a finite field.

A pair of tables builds the space: psi, a bijection fixing 0 and commuting
with negation, transports native addition; phi, a multiplicative bijection,
twists the scalar action. The derived operations are

    alpha (+) beta  = psi^-1(psi(alpha) + psi(beta))
    alpha (.) beta  = psi^-1(phi(alpha) * psi(beta))

and every structural claim about them (abelian group, action laws,
freeness, quasi-kernel generation, the one-parameter family of additions
recovered from scalar multiples of 1) is checked exhaustively, never
assumed. Only finite carriers live here; the rational analogue is
exercised through the induced-structure machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .finite import AdditionTable, FiniteField
from .kernels import assoc_witness, left_distrib_witness
from .report import Report

__all__ = [
    "ElementaryNVS",
    "build_elementary",
    "verify_nvs_axioms",
    "addition_at",
    "check_elementary_box1",
]


@dataclass(frozen=True)
class ElementaryNVS:
    """Scalars and vectors share the carrier; indices into field tables."""

    field: FiniteField
    psi: np.ndarray
    psi_inv: np.ndarray
    phi: np.ndarray
    box_add: np.ndarray
    box_smul: np.ndarray

    def __post_init__(self):
        for t in (self.psi, self.psi_inv, self.phi, self.box_add, self.box_smul):
            t.flags.writeable = False


def _is_bijection(t: np.ndarray, m: int) -> bool:
    return len(t) == m and sorted(t.tolist()) == list(range(m))


def build_elementary(
    field: FiniteField,
    psi: np.ndarray,
    phi: np.ndarray,
    *,
    validate: bool = True,
) -> ElementaryNVS:
    """Assemble the space, validating the hypotheses exhaustively.

    validate=False skips the hypothesis checks so deliberately broken
    inputs can reach the axiom verifier in mutation tests.
    """
    psi = np.asarray(psi, dtype=np.int64)
    phi = np.asarray(phi, dtype=np.int64)
    m = field.m
    if validate:
        if not _is_bijection(psi, m):
            raise DomainError("psi is not a bijection of the carrier")
        if psi[field.zero] != field.zero:
            raise DomainError("psi does not fix zero")
        if not np.array_equal(psi[field.neg], field.neg[psi]):
            raise DomainError("psi does not commute with negation")
        if not _is_bijection(phi, m):
            raise DomainError("phi is not a bijection of the carrier")
        if phi[field.one] != field.one:
            raise DomainError("phi does not fix one")
        if not np.array_equal(phi[field.mul], field.mul[np.ix_(phi, phi)]):
            raise DomainError("phi is not multiplicative")
    psi_inv = np.argsort(psi)
    box_add = psi_inv[field.add[np.ix_(psi, psi)]]
    box_smul = psi_inv[field.mul[phi[:, None], psi[None, :]]]
    return ElementaryNVS(field, psi, psi_inv, phi, box_add, box_smul)


def verify_nvs_axioms(s: ElementaryNVS, *, backend: str | None = None) -> Report:
    """Exhaustive run of the elementary near-vector-space axioms.

    Also re-derives the transport identities psi(a (.) b) = phi(a) psi(b)
    and psi(a (+) b) = psi(a) + psi(b) pointwise, which double as a check
    that the tables were assembled from the inputs they claim.
    """
    F = s.field
    m = F.m
    rep = Report("elementary near-vector-space axioms")
    A, S = s.box_add, s.box_smul

    wit = assoc_witness(A, backend_name=backend)
    rep.add("add_associative", wit is None, witness=wit)
    rep.add("add_commutative", bool(np.array_equal(A, A.T)))
    rep.add("add_zero", bool(np.array_equal(A[F.zero], np.arange(m))))
    box_neg = s.psi_inv[F.neg[s.psi]]
    rep.add(
        "add_inverses",
        bool(np.array_equal(A[np.arange(m), box_neg], np.full(m, F.zero))),
    )

    rep.add("action_identity", bool(np.array_equal(S[F.one], np.arange(m))))
    rep.add("action_minus_one", bool(np.array_equal(S[F.minus_one], box_neg)))
    rep.add("action_zero", bool((S[F.zero] == F.zero).all()))
    lhs, rhs = S[F.mul], S[:, S]
    assoc = np.array_equal(lhs, rhs)
    wit = None if assoc else tuple(int(v) for v in np.argwhere(lhs != rhs)[0])
    rep.add("action_associative", assoc, witness=wit)
    wit = left_distrib_witness(S, A, backend_name=backend)
    rep.add("action_distributes", wit is None, witness=wit)

    bad = None
    for gamma in range(m):
        if gamma == F.zero:
            continue
        for alpha in range(m):
            if S[alpha, gamma] == gamma and alpha != F.one:
                bad = (alpha, gamma)
                break
        if bad:
            break
    rep.add("action_free_off_zero", bad is None, witness=bad)

    quasi = []
    for v in range(m):
        col = S[:, v]
        if bool(np.isin(A[np.ix_(col, col)], col).all()):
            quasi.append(v)
    rep.add("quasi_kernel_is_everything", quasi == list(range(m)), witness=quasi)
    reached = set(quasi)
    frontier = list(quasi)
    while frontier:
        nxt = []
        for v in frontier:
            for w in (set(int(x) for x in A[v]) | set(int(x) for x in S[:, v])):
                if w not in reached:
                    reached.add(w)
                    nxt.append(w)
        frontier = nxt
    rep.add("quasi_kernel_generates", reached == set(range(m)))
    rep.add(
        "orbit_of_one_full",
        sorted(int(x) for x in S[:, F.one]) == list(range(m)),
    )

    rep.add(
        "transport_multiplicative",
        bool(
            np.array_equal(
                s.psi[S], F.mul[s.phi[:, None], s.psi[None, :]]
            )
        ),
    )
    rep.add(
        "transport_additive",
        bool(np.array_equal(s.psi[A], F.add[np.ix_(s.psi, s.psi)])),
    )
    rep.counts["triples"] = m**3
    return rep


def _box_one(s: ElementaryNVS) -> np.ndarray:
    """The table of the addition at the vector 1: pull (+) back through
    K(alpha) = alpha (.) 1."""
    K = s.box_smul[:, s.field.one]
    K_inv = np.argsort(K)
    return K_inv[s.box_add[np.ix_(K, K)]]


def addition_at(
    s: ElementaryNVS, gamma: int, *, verify: bool = True, backend: str | None = None
) -> AdditionTable:
    """The addition the space induces at the vector gamma (.) 1:
    alpha (+)_gamma beta = (alpha gamma (+)_1 beta gamma) gamma^-1.

    With verify on, the table is checked to be an abelian group addition
    left-distributed over by multiplication, which is what makes the
    carrier a near-field under it.
    """
    F = s.field
    if gamma == F.zero:
        raise DomainError("gamma must be nonzero")
    t1 = _box_one(s)
    g_col = F.mul[:, gamma]
    table = F.mul[t1[np.ix_(g_col, g_col)], F.inv[gamma]]
    if verify:
        if assoc_witness(table, backend_name=backend) is not None:
            raise DomainError("induced addition is not associative")
        ok = (
            np.array_equal(table, table.T)
            and np.array_equal(table[F.zero], np.arange(F.m))
            and left_distrib_witness(F.mul, table, backend_name=backend) is None
        )
        if not ok:
            raise DomainError("induced addition fails the near-field laws")
    return AdditionTable(field=F, table=table, provenance=f"gamma={gamma}", exponent=None)


def check_elementary_box1(s: ElementaryNVS) -> Report:
    """Compare the addition at 1 against the pullback of native addition
    through phi'(alpha) = phi(alpha) * psi(1), computed independently."""
    F = s.field
    rep = Report("addition at one vs quasi-multiplicative pullback")
    t1 = _box_one(s)
    phi_prime = F.mul[s.phi, s.psi[F.one]]
    rep.add("phi_prime_bijective", _is_bijection(phi_prime, F.m))
    p_inv = np.argsort(phi_prime)
    pulled = p_inv[F.add[np.ix_(phi_prime, phi_prime)]]
    same = np.array_equal(t1, pulled)
    wit = None
    if not same:
        i, j = np.argwhere(t1 != pulled)[0]
        wit = (int(i), int(j), int(t1[i, j]), int(pulled[i, j]))
    rep.add("box_one_equals_pullback", same, witness=wit)
    rep.counts["pairs"] = F.m**2
    return rep
