"""Discrete symmetries: matrix identities and their consequences for spectra."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import linear_sum_assignment

from .angular import AngularSector, SpinorType
from .boundary import boundary_block, chiral_bag_block, four_spinor
from .semiq import I2, SIGMA, k_matrix

S1, S2, S3 = SIGMA
IS2 = 1j * S2

MATRIX_TOL = 1e-12
SPECTRUM_TOL = 1e-9


class SymmetryName(Enum):
    TRS = "TRS"
    PHS = "PHS"
    CHIRAL = "Chiral"
    INVERSION = "Inversion"
    PARITY_CONJUGATION = "ParityConjugation"


class SymmetryTarget(Enum):
    SEMI_QUANTUM_K = "SemiQuantumK"
    BOUNDARY_B = "BoundaryB"
    SPECTRUM_APS = "SpectrumAPS"
    SPECTRUM_CHIRAL = "SpectrumChiral"


@dataclass
class SymmetryCheck:
    name: SymmetryName
    target: SymmetryTarget
    residual: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name.value, "target": self.target.value, "residual": self.residual,
                "passed": self.passed, "detail": self.detail}


def _mcheck(name, target, residual, detail=""):
    r = float(residual)
    return SymmetryCheck(name, target, r, r <= MATRIX_TOL, detail)


TRS_OP = np.kron(np.eye(2), IS2)
PHS_OP = np.kron(S1, IS2)
CHIRAL_OP = np.kron(S1, I2)
INVERSION_OP = np.kron(S3, I2)
TRS_QUANT_OP = np.kron(S3, IS2)
PHS_QUANT_OP = np.kron(S2, S2)


def antiunitary_square(u: np.ndarray) -> int:
    """(u K)^2 = u conj(u) for an antiunitary u K; returns the sign of that multiple of 1."""
    sq = u @ np.conj(u)
    n = sq.shape[0]
    for s in (1, -1):
        if np.allclose(sq, s * np.eye(n), atol=1e-14):
            return s
    raise ValueError("the square of this antiunitary is not +-1")


def antiunitary_squares() -> dict[str, int]:
    return {
        "1 x i sigma2": antiunitary_square(TRS_OP),
        "sigma1 x i sigma2": antiunitary_square(PHS_OP),
        "sigma3 x i sigma2": antiunitary_square(TRS_QUANT_OP),
        "sigma2 x sigma2": antiunitary_square(PHS_QUANT_OP),
    }


def check_k_symmetries(k, mu: float) -> list[SymmetryCheck]:
    """Residuals of the discrete-symmetry identities of K_mu(k) at one point.

    The operator-level identities of the Dirac Hamiltonian are checked on
    K_mu through k -> -k, since complex conjugation inverts the momentum.
    """
    k = np.asarray(k, dtype=float)
    K = k_matrix(k, mu)
    Km = k_matrix(-k, mu)
    t = SymmetryTarget.SEMI_QUANTUM_K
    scale = max(1.0, float(np.max(np.abs(K))))

    def r(m):
        return float(np.max(np.abs(m))) / scale

    return [
        _mcheck(SymmetryName.TRS, t, r(TRS_OP @ K.conj() @ TRS_OP.conj().T - K), "(1 x i s2) conj(K) = K"),
        _mcheck(SymmetryName.PHS, t, r(PHS_OP @ K.conj() @ PHS_OP.conj().T + K), "(s1 x i s2) conj(K) = -K"),
        _mcheck(SymmetryName.CHIRAL, t, r(CHIRAL_OP @ K @ CHIRAL_OP + K), "(s1 x 1) K = -K"),
        _mcheck(SymmetryName.INVERSION, t, r(INVERSION_OP @ K @ INVERSION_OP - Km), "(s3 x 1) K(k) = K(-k)"),
        _mcheck(SymmetryName.PARITY_CONJUGATION, t,
                r(TRS_QUANT_OP @ K.conj() @ TRS_QUANT_OP.conj().T - Km), "(s3 x i s2) conj(K(k)) = K(-k)"),
        _mcheck(SymmetryName.PARITY_CONJUGATION, t,
                r(PHS_QUANT_OP @ K.conj() @ PHS_QUANT_OP - (-Km)), "(s2 x s2) conj(K(k)) = -K(-k)"),
    ]


# --- boundary operator on sectors ---------------------------------------------

def _samples(n: int, seed: int):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.1, math.pi - 0.1, n), rng.uniform(0.0, 2 * math.pi, n)


def sector_map(op: np.ndarray, antilinear: bool, src: AngularSector, dst: AngularSector,
               n: int = 40, seed: int = 0) -> tuple[np.ndarray, float]:
    """Matrix M of a constant 4x4 operator (optionally followed by conjugation) between sectors.

    The image of the coefficient basis of src is fitted in the basis of dst at
    random angles; M satisfies op[x](a, b) = dst-spinor(M (a, b)) (with (a, b)
    conjugated first when antilinear). Returns M and the fit residual, which
    is zero exactly when the operator maps src into dst.
    """
    theta, phi = _samples(n, seed)
    ys, ds = [], []
    for a, b in ((1.0, 0.0), (0.0, 1.0)):
        x = four_spinor(src, a, b, theta, phi)
        if antilinear:
            x = np.conj(x)
        ys.append((op @ x).ravel())
        ds.append(four_spinor(dst, a, b, theta, phi).ravel())
    Y = np.stack(ys, axis=1)
    D = np.stack(ds, axis=1)
    M, *_ = np.linalg.lstsq(D, Y, rcond=None)
    fit = float(np.max(np.abs(D @ M - Y)))
    return M, fit


def check_boundary_symmetries(sector: AngularSector, mu: float, R: float,
                              chiral_lambda: float = 0.1) -> list[SymmetryCheck]:
    """Conjugation identities of B_mu realized on the PhiType/PsiType 2x2 blocks.

    An operator maps the PhiType sector (j, m) onto a sector of (j, +-m) with a
    coefficient matrix M; the identity "op B op^-1 = B" becomes
    B_dst M = M B_src on the real blocks.
    """
    phi = AngularSector(sector.j, sector.m, SpinorType.PHI)
    psi = phi.with_type(SpinorType.PSI)
    phi_m = AngularSector(sector.j, -sector.m, SpinorType.PHI)
    psi_m = phi_m.with_type(SpinorType.PSI)
    Bphi = boundary_block(phi, mu, R)
    Bpsi = boundary_block(psi, mu, R)
    t = SymmetryTarget.BOUNDARY_B
    out = []
    cases = [
        (SymmetryName.CHIRAL, CHIRAL_OP, False, psi, Bpsi, "(s1 x 1) B = B: Phi(j,m) -> Psi(j,m)"),
        (SymmetryName.PHS, PHS_QUANT_OP, True, psi_m, boundary_block(psi_m, mu, R),
         "(s2 x s2) conj(B) = B: Phi(j,m) -> Psi(j,-m)"),
        (SymmetryName.TRS, TRS_QUANT_OP, True, phi_m, boundary_block(phi_m, mu, R),
         "(s3 x i s2) conj(B) = B: Phi(j,m) -> Phi(j,-m)"),
    ]
    scale = float(np.max(np.abs(Bphi)))
    for name, op, anti, dst, Bdst, label in cases:
        M, fit = sector_map(op, anti, phi, dst)
        res = max(fit, float(np.max(np.abs(Bdst @ M - M @ Bphi))) / scale)
        out.append(_mcheck(name, t, res, label))
    # eigenvalues of the two blocks coincide and the eigenvectors are exchanged
    wphi, vphi = np.linalg.eigh(Bphi)
    wpsi, vpsi = np.linalg.eigh(Bpsi)
    M, _ = sector_map(CHIRAL_OP, False, phi, psi)
    swap = max(abs(abs(np.vdot(vpsi[:, i], M @ vphi[:, i])) - 1.0) for i in range(2))
    out.append(_mcheck(SymmetryName.CHIRAL, t, max(float(np.max(np.abs(wphi - wpsi))) * R, swap),
                       "Phi and Psi block eigenvalues coincide; (s1 x 1) maps eigenvectors"))
    # the chiral bag condition is not invariant: lambda is reflected
    C = chiral_bag_block(chiral_lambda)
    Cm = chiral_bag_block(-chiral_lambda)
    out.append(_mcheck(SymmetryName.CHIRAL, t, float(np.max(np.abs(M @ C - Cm @ M))),
                       "(s1 x 1) takes the chiral bag at lambda to -lambda"))
    Mp, _ = sector_map(PHS_QUANT_OP, True, phi, psi_m)
    # the image obeys the bag condition at -lambda with the same sign, as for the chiral operator
    out.append(_mcheck(SymmetryName.PHS, t, float(np.max(np.abs(Mp @ C - Cm @ Mp))),
                       "(s2 x s2)K takes the chiral bag at lambda to the bag at -lambda"))
    return out


# --- spectra -----------------------------------------------------------------

def _root_sets(branches) -> dict[float, list[tuple[float, int]]]:
    out: dict[float, list[tuple[float, int]]] = {}
    for b in branches:
        for p in b.points:
            out.setdefault(round(p.mu, 12), []).append((p.E, p.p_sign))
    return out


def root_set_distance(a: list[tuple[float, int]], b: list[tuple[float, int]], flip_p: bool = True,
                      use_p: bool = True):
    """Optimal matching of a against the mirror image of b; (max distance, unpaired)."""
    mb = [(-E, -p if flip_p else p) for E, p in b]
    if not a and not mb:
        return 0.0, []
    if len(a) != len(mb):
        unpaired = sorted(set(E for E, _ in a) ^ set(E for E, _ in mb))
        return math.inf, unpaired
    cost = np.abs(np.array([E for E, _ in a])[:, None] - np.array([E for E, _ in mb])[None, :])
    if use_p:
        pa = np.array([p for _, p in a])[:, None]
        pb = np.array([p for _, p in mb])[None, :]
        cost = np.where(pa == pb, cost, math.inf)
    if np.isinf(cost).all(axis=1).any():
        return math.inf, [a[i][0] for i in np.where(np.isinf(cost).all(axis=1))[0]]
    rows, cols = linear_sum_assignment(np.where(np.isinf(cost), 1e300, cost))
    d = cost[rows, cols]
    return float(np.max(d)), []


def check_spectrum_symmetries(branches_a, branches_b, bc, use_p: bool = True) -> SymmetryCheck:
    """Mirror (E, P) -> (-E, -P) between two families of branches on a common mu grid.

    APS: a = PhiType branches and b = PsiType branches of the same problem.
    Chiral bag: a = branches at lambda and b = branches at -lambda.
    Passing a == b tests whether one spectrum is symmetric by itself; use_p=False
    compares energies only.
    """
    from .problem import BoundaryCondition

    bc = BoundaryCondition(bc)
    target = SymmetryTarget.SPECTRUM_CHIRAL if bc is BoundaryCondition.CHIRAL_BAG \
        else SymmetryTarget.SPECTRUM_APS
    name = SymmetryName.CHIRAL
    sa, sb = _root_sets(branches_a), _root_sets(branches_b)
    # refinement points inserted by one sweep only are not comparable
    ta = {b.p_sign for b in branches_a}
    tb = {b.p_sign for b in branches_b}

    def complete(s, types, mu):
        return {p for _, p in s[mu]} >= types

    common = [mu for mu in sorted(set(sa) & set(sb)) if complete(sa, ta, mu) and complete(sb, tb, mu)]
    if not common:
        return SymmetryCheck(name, target, math.inf, False, "branches share no mu values")
    worst = 0.0
    bad = []
    for mu in common:
        d, unpaired = root_set_distance(sa[mu], sb[mu], use_p=use_p)
        if unpaired:
            bad.append((mu, unpaired))
        worst = max(worst, d)
    detail = f"{len(common)} mu values"
    if bad:
        detail += "; unpaired roots at mu=" + ", ".join(f"{m:g}: {u}" for m, u in bad[:5])
    return SymmetryCheck(name, target, worst, worst <= SPECTRUM_TOL, detail)
