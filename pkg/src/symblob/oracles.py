"""Reference Gram matrices for Temperley-Lieb and blob cell modules.

These are the tridiagonal matrices built by gluing a small boundary block to
a chain of ``[2]`` entries.  They are independent of the diagram engine and
serve as closed-form oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import det_bareiss
from .ring import BLOB_CONTEXT, Scalar, qnum


def glue(M: list[list], k: int, delta) -> list[list]:
    """``M`` followed by ``k`` diagonal ``delta`` entries, coupled by 1s.

    ``k = -1`` drops the last row and column of ``M``.
    """
    if k < 0:
        if k != -1:
            raise ValueError("only k >= -1 is meaningful")
        return [row[:-1] for row in M[:-1]]
    size = len(M) + k
    zero = delta * 0
    out = [[zero] * size for _ in range(size)]
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            out[i][j] = x
    for t in range(len(M), size):
        out[t][t] = delta
        if t > 0:
            out[t][t - 1] = out[t - 1][t] = zero + 1
    return out


def q(m) -> Scalar:
    return qnum(m, BLOB_CONTEXT)


def tl_gram(n: int) -> list[list]:
    """Gram matrix of the TL cell module with n-2 through lines, delta = [2]."""
    if n < 2:
        raise ValueError("needs n >= 2")
    return glue([[q(2)]], n - 2, q(2))


def blob_boundary(sign: str, kappa_L=None) -> list[list]:
    kL = q("l") / q("l+1") if kappa_L is None else kappa_L
    d = q(2)
    one = d * 0 + 1
    if sign == "+":
        return [[kL, kL], [kL, d]]
    if sign == "-":
        return [[kL, kL, one], [kL, d, one], [one, one, d]]
    raise ValueError("sign must be '+' or '-'")


def blob_gram(n: int, sign: str) -> list[list]:
    """Blob cell module Gram matrix of size n (n-2 through lines when sign is '+')."""
    B = blob_boundary(sign)
    return glue(B, n - len(B), q(2))


def symplectic_boundary(n: int, kappa_L=None, kappa_R=None) -> list[list]:
    """The (n+1) x (n+1) matrix with both boundary blocks."""
    kL = q("l") / q("l+1") if kappa_L is None else kappa_L
    kR = q("r") / q("r+1") if kappa_R is None else kappa_R
    N = n + 1
    d = q(2)
    zero, one = d * 0, d * 0 + 1
    M = [[zero] * N for _ in range(N)]
    for i in range(N):
        M[i][i] = d
        if i + 1 < N:
            M[i][i + 1] = M[i + 1][i] = one
    M[0][0] = M[0][1] = M[1][0] = kL
    M[0][2] = M[2][0] = one
    M[1][2] = M[2][1] = one
    M[N - 2][N - 1] = M[N - 1][N - 2] = kR
    M[N - 1][N - 1] = kR
    return M


@dataclass(frozen=True)
class OracleCheck:
    name: str
    n: int
    det: Scalar
    expected: Scalar

    @property
    def passed(self) -> bool:
        return self.det == self.expected

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "det": self.det.to_str(),
                "expected": self.expected.to_str(), "passed": self.passed}


def check_tl(n: int) -> OracleCheck:
    return OracleCheck("tl", n, det_bareiss(tl_gram(n)), q(n))


def check_blob(n: int, sign: str) -> OracleCheck:
    det = det_bareiss(blob_gram(n, sign))
    if sign == "+":
        expected = q("l") / q("l+1") ** 2 * q(f"{n}+l")
    else:
        expected = q("l+2") / q("l+1") ** 2 * q(f"2-{n}+l")
    return OracleCheck(f"blob{sign}", n, det, expected)


def check_symplectic(n: int) -> list[OracleCheck]:
    """Both closed forms for the doubly bounded matrix: general kappa_R, then kappa_R = [r]/[r+1]."""
    kR = q("r") / q("r+1")
    out = []
    det = det_bareiss(symplectic_boundary(n))
    first = kR * q("l+2") / q("l+1") ** 2 * (q(f"2-{n}+l") - kR * q(f"3-{n}+l"))
    out.append(OracleCheck("symplectic.kappa_R", n, det, first))
    second = q("r") * q("l+2") / (q("r+1") * q("l+1")) * q(f"l-(r+{n}-2)") / (q("r+1") * q("l+1"))
    out.append(OracleCheck("symplectic.product", n, det, second))
    return out
