"""Brute-force maximization of coefficient functionals over the Caratheodory class.

Points of the class are parameterized two ways: finitely many Herglotz atoms
(softmax weights, free angles) and, when only c1..c3 matter, the
Libera-Zlotkiewicz form with c1 real.  Each start is refined by compass
search in the kernel layer.  Starts draw from ``default_rng([seed, index])``
so results do not depend on how starts are batched or threaded.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from . import series as S
from ._kernels import _ids as ks
from .bounds import (BoundReport, class_inverse_bounds, conj_an_bound,
                     fs_inverse_bound, h3_conjecture_value, hankel2_inverse_bound,
                     sr_direct_bounds, sr_fekete_szego)
from .classes import (CaratheodoryCoeffs, HerglotzAtoms, K, MindaClass, SchwarzSpec,
                      booth_class, cardioid_class, coeffs_from_caratheodory, direct_coeffs,
                      extremal_caratheodory, generate_function, get_class, inverse_coeffs,
                      lemniscate_class, lz_lift)
from .radii import zfp_over_f_series
from .series import Series

SHARP_TOL = 1e-3
SOUND_TOL = 1e-9
MAX_ATOMS = 4


# --------------------------------------------------------------------------
# functionals

_IDS = {
    "absA2": ks.ABS_A2, "absA3": ks.ABS_A3, "absA4": ks.ABS_A4, "absA5": ks.ABS_A5,
    "fs_inverse": ks.FS_INVERSE, "hankel2_inverse": ks.HANKEL2_INVERSE,
    "abs_an_direct": ks.ABS_AN, "fs_direct": ks.FS_DIRECT, "hankel2_direct": ks.HANKEL2_DIRECT,
    "a2a3_minus_a4": ks.A2A3_MINUS_A4, "h3_direct": ks.H3_DIRECT,
}

# highest Caratheodory coefficient each functional depends on
_DEPTH = {
    "absA2": 1, "absA3": 2, "absA4": 3, "absA5": 4, "fs_inverse": 2, "hankel2_inverse": 3,
    "fs_direct": 2, "hankel2_direct": 3, "a2a3_minus_a4": 3, "h3_direct": 4,
}


@dataclass(frozen=True)
class Functional:
    kind: str
    mu: complex = 0j
    n: int = 2

    def __post_init__(self):
        if self.kind not in _IDS:
            raise ValueError(f"unknown functional {self.kind!r}; known: {sorted(_IDS)}")
        if self.kind == "abs_an_direct" and not (2 <= self.n <= ks.NC + 1):
            raise ValueError(f"abs_an_direct supports 2 <= n <= {ks.NC + 1}, got {self.n}")

    @classmethod
    def parse(cls, text: str) -> "Functional":
        """``absA4``, ``fs_inverse(0.5)``, ``abs_an_direct(5)`` ..."""
        text = text.strip()
        if "(" not in text:
            return cls(text)
        kind, arg = text[:-1].split("(", 1)
        if kind == "abs_an_direct":
            return cls(kind, n=int(arg))
        return cls(kind, mu=complex(arg.replace(" ", "").replace("i", "j")))

    @property
    def fid(self) -> int:
        return _IDS[self.kind]

    @property
    def depth(self) -> int:
        """Index of the last c_n the functional reads."""
        if self.kind == "abs_an_direct":
            return self.n - 1
        return _DEPTH[self.kind]

    @property
    def label(self) -> str:
        if self.kind in ("fs_inverse", "fs_direct"):
            mu = complex(self.mu)
            return f"{self.kind}({mu.real:g})" if mu.imag == 0 else f"{self.kind}({mu})"
        if self.kind == "abs_an_direct":
            return f"abs_an_direct({self.n})"
        return self.kind

    def evaluate(self, cls_or_B, c) -> float:
        """Closed-form evaluation from the explicit coefficient formulas.

        Independent of the kernel pipeline; used to cross-check it and to
        evaluate catalog witnesses exactly.
        """
        c = _as_c(c)
        if self.kind == "abs_an_direct" and self.n > 5:
            if not isinstance(cls_or_B, MindaClass):
                raise ValueError("a_n with n > 5 needs the class, not just B1..B4")
            f = coeffs_from_caratheodory(cls_or_B.phi_series(self.n), c[: self.n])
            return float(abs(f[self.n]))
        B = cls_or_B.B if isinstance(cls_or_B, MindaClass) else tuple(cls_or_B)
        c4 = CaratheodoryCoeffs(*c[:4])
        a2, a3, a4, a5 = direct_coeffs(B, c4)
        A2, A3, A4, A5 = inverse_coeffs(B, c4)
        mu = complex(self.mu)
        k = self.kind
        if k == "absA2":
            v = A2
        elif k == "absA3":
            v = A3
        elif k == "absA4":
            v = A4
        elif k == "absA5":
            v = A5
        elif k == "fs_inverse":
            v = A3 - mu * A2 * A2
        elif k == "hankel2_inverse":
            v = A2 * A4 - A3 * A3
        elif k == "abs_an_direct":
            v = (1.0, a2, a3, a4, a5)[self.n - 1]
        elif k == "fs_direct":
            v = a3 - mu * a2 * a2
        elif k == "hankel2_direct":
            v = a2 * a4 - a3 * a3
        elif k == "a2a3_minus_a4":
            v = a2 * a3 - a4
        else:
            v = a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2)
        return float(abs(v))


def _as_c(c) -> np.ndarray:
    if isinstance(c, CaratheodoryCoeffs):
        c = c.as_array()
    elif isinstance(c, HerglotzAtoms):
        c = c.moments(ks.NC)
    c = np.asarray(c, np.complex128).ravel()
    out = np.zeros(ks.NC, np.complex128)
    out[: min(c.size, ks.NC)] = c[: ks.NC]
    return out


def phi_array(cls: MindaClass) -> np.ndarray:
    """phi_0..phi_NC, the Taylor data the kernels need."""
    return np.ascontiguousarray(cls.phi_series(ks.NC).coeffs, np.complex128)


# --------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchBudget:
    starts: int = 64
    iterations: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1 or self.iterations < 1:
            raise ValueError("starts and iterations must be positive")
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class SearchResult:
    value: float
    witness: object
    c: np.ndarray
    start: int
    parameterization: str
    values: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, HerglotzAtoms):
            wd = {"atoms": [[float(a), float(b)] for a, b in zip(w.weights, w.angles)]}
        else:
            wd = {"lz": {k: (v if isinstance(v, float) else [v.real, v.imag]) for k, v in w.items()}}
        return {"max": self.value, "start": self.start, "parameterization": self.parameterization,
                "c": [[z.real, z.imag] for z in self.c[:4]], "witness": wd}


def _start_plan(functional: Functional, starts: int):
    """(start index, kind, J) for each start; LZ starts join when only c1..c3 matter."""
    plan = []
    use_lz = functional.depth <= 3
    for i in range(starts):
        plan.append((i, ks.HERGLOTZ, 1 + i % MAX_ATOMS))
    if use_lz:
        plan += [(starts + i, ks.LIBERA_ZLOTKIEWICZ, 0) for i in range(starts)]
    return plan


def _initial(seed: int, index: int, kind: int, J: int) -> np.ndarray:
    rng = np.random.default_rng([int(seed), int(index)])
    if kind == ks.HERGLOTZ:
        return np.concatenate([rng.normal(0.0, 1.0, J), rng.uniform(0, 2 * np.pi, J)])
    return np.array([rng.uniform(0, 2), rng.uniform(0, 1), rng.uniform(0, 2 * np.pi),
                     rng.uniform(0, 2 * np.pi)])


def _softmax(u):
    w = np.exp(u - u.max())
    return w / w.sum()


def _decode(x: np.ndarray, kind: int, J: int):
    """Witness object and its c_1..c_NC, rotated so that c1 is real and >= 0."""
    if kind == ks.HERGLOTZ:
        w = _softmax(x[:J])
        t = x[J:]
        c1 = 2 * np.sum(w * np.exp(1j * t))
        rot = np.angle(c1) if abs(c1) > 1e-14 else 0.0
        t = np.mod(t - rot, 2 * np.pi)
        atoms = HerglotzAtoms(tuple(map(float, w / w.sum())), tuple(map(float, t)))
        return atoms, atoms.moments(ks.NC)
    c1 = float(np.clip(x[0], 0, 2))
    rho = float(np.clip(x[1], 0, 1))
    g = rho * np.exp(1j * x[2])
    z = complex(np.exp(1j * x[3]))
    cc = lz_lift(c1, g, z)
    return {"c1": c1, "gamma": complex(g), "z": z}, _as_c(cc)


def _run_group(items, fid, mu, n, phi, budget, backend):
    """Descend a batch of starts sharing (kind, J)."""
    kind, J = items[0][1], items[0][2]
    x0 = np.stack([_initial(budget.seed, i, kind, J) for i, _, _ in items])
    x, best = _kernels.descend(x0, kind, J, phi, fid, mu, n, iterations=budget.iterations,
                               backend=backend)
    return [(i, kind, J, x[r], float(best[r])) for r, (i, _, _) in enumerate(items)]


def maximize(functional: Functional, cls: MindaClass, budget: SearchBudget = SearchBudget(),
             workers: int = 1, backend: str | None = None) -> SearchResult:
    """Multi-start maximum of ``functional`` over S*(phi).  Deterministic given the seed."""
    phi = phi_array(cls)
    plan = _start_plan(functional, budget.starts)
    groups: dict = {}
    for item in plan:
        groups.setdefault((item[1], item[2]), []).append(item)
    # split groups into chunks so threads have work to share; per-start results are
    # independent of chunking
    chunks = []
    for items in groups.values():
        size = max(1, math.ceil(len(items) / max(1, workers)))
        chunks += [items[s : s + size] for s in range(0, len(items), size)]
    args = (functional.fid, complex(functional.mu), functional.n, phi, budget, backend)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda ch: _run_group(ch, *args), chunks))
    else:
        parts = [_run_group(ch, *args) for ch in chunks]
    rows = sorted((r for p in parts for r in p), key=lambda r: r[0])
    values = np.array([r[4] for r in rows])
    best = int(np.argmax(values))  # first index wins ties
    i, kind, J, x, v = rows[best]
    witness, c = _decode(x, kind, J)
    return SearchResult(v, witness, c, i, "herglotz" if kind == ks.HERGLOTZ else "lz", values)


# --------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    functional: str
    class_name: str
    bound: float
    empirical: float
    verdict: str
    sharp_claimed: bool
    status: str
    witness: dict | None = None
    witness_value: float | None = None

    def to_dict(self) -> dict:
        return {
            "target": f"bound:{self.functional}:{self.class_name}", "bound": self.bound,
            "empirical": self.empirical, "verdict": self.verdict, "sharp": self.sharp_claimed,
            "status": self.status, "witness": self.witness, "witness_value": self.witness_value,
        }


def classify(empirical: float, bound: BoundReport, sharp_tol: float = SHARP_TOL) -> str:
    if empirical > bound.value + SOUND_TOL:
        return "VIOLATION"
    if bound.sharp and empirical >= bound.value - sharp_tol:
        return "SHARP-CONFIRMED"
    return "SOUND"


def verify_bound(functional: Functional, cls: MindaClass, bound: BoundReport,
                 budget: SearchBudget = SearchBudget(), sharp_tol: float = SHARP_TOL,
                 workers: int = 1, backend: str | None = None) -> Verdict:
    res = maximize(functional, cls, budget, workers, backend)
    v = classify(res.value, bound, sharp_tol)
    return Verdict(functional.label, cls.builtin or cls.name, bound.value, res.value, v,
                   bound.sharp, bound.status, res.to_dict())


# --------------------------------------------------------------------------
# extremal functions


def _h_series(order):
    z = Series.identity(order)
    core = S.div(Series.constant(K * K, order), (K - z) * (K - z))
    return z * core * S.exp(z * (-1 / K))


def _fq_series(order):
    z = Series.identity(order)
    q = z + S.power(1.0 + z * z, 0.5)
    # log(1 - z + q) - log 2, kept as one log so the series starts at 1
    g = q - S.log((1.0 - z + q) * 0.5) - 1.0
    return z * S.exp(g)


def _fB_series(alpha, order):
    z = Series.identity(order)
    # atanh(sqrt(a) z)/sqrt(a) = sum a^j z^(2j+1)/(2j+1)
    g = np.zeros(order + 1, np.complex128)
    for j in range((order - 1) // 2 + 1):
        g[2 * j + 1] = alpha**j / (2 * j + 1)
    return z * S.exp(Series(g))


def _fC_series(order):
    z = Series.identity(order)
    return z * S.exp(z * (4 / 3) + z * z * (1 / 3))


def _cs_pair_series(alpha, order):
    z = Series.identity(order)
    return z * (1.0 + z) * S.power(1.0 - z, -(3 - 2 * alpha))


def _zfp(kind, alpha=None):
    if kind == "h":
        return lambda z: 1 + (z / K) * (K + z) / (K - z)
    if kind == "f_q":
        return lambda z: z + np.sqrt(1 + z * z)
    if kind == "f_L":
        return lambda z: np.sqrt(1 + z)
    if kind == "f_C":
        return lambda z: 1 + 4 * z / 3 + 2 * z * z / 3
    if kind == "f_B":
        return lambda z: 1 + z / (1 - alpha * z * z)
    if kind == "cs_pair":
        return lambda z: (1 + 2 * (2 - alpha) * z + (1 - 2 * alpha) * z * z) / (1 - z * z)
    return None


@dataclass
class Extremal:
    id: str
    series: Series
    known_coeffs: tuple
    known_inverse: tuple = ()
    caratheodory: CaratheodoryCoeffs | None = None
    zfp_over_f: object = field(default=None, repr=False)


def _parse_id(ident: str):
    ident = ident.strip()
    if "(" in ident:
        base, arg = ident[:-1].split("(", 1)
        return base, float(arg)
    return ident, None


def extremal_catalog(ident: str, order: int = 8) -> Extremal:
    """Named extremal functions with their listed Taylor coefficients (a1, a2, ...)."""
    base, alpha = _parse_id(ident)
    sr = get_class("sr")
    if base == "f0":
        w = SchwarzSpec(1.0, 1)
        ext = Extremal(ident, generate_function(get_class("se"), w, order),
                       (1, 1, 3 / 4, 17 / 36, 19 / 72), (1, -1, 5 / 4, -31 / 18, 361 / 144),
                       extremal_caratheodory(w))
    elif base in ("f1", "f2", "f3"):
        m = int(base[1])
        w = SchwarzSpec(1.0, m)
        known, inv = {
            1: ((1, 1 / K, 3 / (2 * K**2), 11 / (6 * K**3), 53 / (24 * K**4)),
                (1, -1 / K, 1 / (2 * K**2), 2 / (3 * K**3), -47 / (24 * K**4))),
            2: ((1, 0, 1 / (2 * K), 0, 5 / (8 * K**2)), (1, 0, -1 / (2 * K), 0, 1 / (8 * K**2))),
            3: ((1, 0, 0, 1 / (3 * K), 0, 0, 7 / (18 * K**2)), (1, 0, 0, -1 / (3 * K))),
        }[m]
        ext = Extremal(ident, generate_function(sr, w, order), known, inv, extremal_caratheodory(w))
    elif base == "h":
        ext = Extremal(ident, _h_series(order), (1, 1 / K, 3 / (2 * K**2), 11 / (6 * K**3), 53 / (24 * K**4)),
                       caratheodory=extremal_caratheodory(SchwarzSpec()))
    elif base == "f_q":
        ext = Extremal(ident, _fq_series(order), ())
    elif base == "f_B":
        if alpha is None:
            raise ValueError("f_B needs alpha, e.g. f_B(0.5)")
        ext = Extremal(ident, _fB_series(alpha, order), (1, 1, 1 / 2, 1 / 6 + alpha / 3))
    elif base == "f_C":
        ext = Extremal(ident, _fC_series(order), (1, 4 / 3, 11 / 9))
    elif base == "f_L":
        ext = Extremal(ident, generate_function(lemniscate_class(), SchwarzSpec(), order), (1, 1 / 2))
    elif base == "cs_pair":
        if alpha is None:
            raise ValueError("cs_pair needs alpha, e.g. cs_pair(0)")
        ext = Extremal(ident, _cs_pair_series(alpha, order), (1, 4 - 2 * alpha))
    else:
        raise KeyError(f"unknown extremal {ident!r}")
    ext.zfp_over_f = _zfp(base, alpha) if base in ("h", "f_q", "f_L", "f_C", "f_B", "cs_pair") else None
    _check_extremal(ext, base, alpha, order)
    return ext


def _check_extremal(ext: Extremal, base, alpha, order):
    """zf'/f of the series must match the closed form the witness is named for."""
    closed = {
        "h": lambda o: get_class("sr").phi_series(o),
        "f_L": lambda o: lemniscate_class().phi_series(o),
        "f_C": lambda o: cardioid_class().phi_series(o),
        "f_B": lambda o: booth_class(alpha).phi_series(o),
    }
    got = zfp_over_f_series(ext.series)
    n = got.order - 1
    if base in closed:
        want = closed[base](got.order)
    elif base == "f_q":
        z = Series.identity(got.order)
        want = z + S.power(1.0 + z * z, 0.5)
    elif base == "cs_pair":
        z = Series.identity(got.order)
        want = S.div(1.0 + z * (2 * (2 - alpha)) + z * z * (1 - 2 * alpha), 1.0 - z * z)
    else:
        return
    if np.max(np.abs(got.coeffs[: n + 1] - want.coeffs[: n + 1])) > 1e-10:
        raise ArithmeticError(f"{ext.id}: zf'/f does not match its closed form")


# --------------------------------------------------------------------------
# the acceptance matrix


@dataclass
class MatrixEntry:
    functional: Functional
    class_id: str
    bound: BoundReport
    witness_c: tuple | None = None  # exact extremal c's for sharp entries

    @property
    def cls(self) -> MindaClass:
        return get_class(self.class_id)

    @property
    def target(self) -> str:
        return f"bound:{self.functional.label}:{self.class_id}"


def _c_of(m: int):
    """c_1..c_NC of ``(1 + z^m)/(1 - z^m)``."""
    return tuple(2.0 + 0j if j % m == 0 else 0j for j in range(1, ks.NC + 1))


def acceptance_matrix(mus=(0.0, 0.5, 1.0, 2.0, 3.0)) -> list[MatrixEntry]:
    entries = []
    # inverse coefficients of S*_e and S*_R
    se, sr = class_inverse_bounds("se"), class_inverse_bounds("sr")
    for n, rep in zip(range(2, 6), se):
        entries.append(MatrixEntry(Functional(f"absA{n}"), "se", rep, _c_of(1)))
    for n, rep, m in zip(range(2, 6), sr, (1, 2, 3, None)):
        entries.append(MatrixEntry(Functional(f"absA{n}"), "sr", rep, _c_of(m) if m else None))
    # Fekete-Szego for inverse coefficients
    for cid in ("se", "sr", "sl"):
        B = get_class(cid).B
        for mu in mus:
            rep = fs_inverse_bound(B[0], B[1], mu)
            wit = _c_of(2) if rep.case_id == "plateau" else _c_of(1)
            entries.append(MatrixEntry(Functional("fs_inverse", mu), cid, rep, wit))
    # second Hankel determinant of the inverse
    for cid in ("s", "sl", "se", "sr"):
        B = get_class(cid).B
        entries.append(MatrixEntry(Functional("hankel2_inverse"), cid, hankel2_inverse_bound(*B[:3])))
    # S*_R direct coefficients
    direct = {r.quantity: r for r in sr_direct_bounds()}
    entries.append(MatrixEntry(Functional("abs_an_direct", n=2), "sr", direct["|a2|"], _c_of(1)))
    entries.append(MatrixEntry(Functional("abs_an_direct", n=3), "sr", direct["|a3|"], _c_of(1)))
    for mu in mus:
        entries.append(MatrixEntry(Functional("fs_direct", mu), "sr", sr_fekete_szego(mu)))
    entries.append(MatrixEntry(Functional("hankel2_direct"), "sr", direct["|a2 a4 - a3^2|"], _c_of(2)))
    entries.append(MatrixEntry(Functional("a2a3_minus_a4"), "sr", direct["|a2 a3 - a4|"]))
    return entries


def conjecture_matrix(nmax: int = 6) -> list[MatrixEntry]:
    out = []
    for n in range(2, nmax + 1):
        rep = BoundReport(f"|a{n}|", conj_an_bound(n), "conjecture", {"class": "sr", "n": n},
                          status="conjecture")
        out.append(MatrixEntry(Functional("abs_an_direct", n=n), "sr", rep, _c_of(1)))
    out.append(MatrixEntry(Functional("h3_direct"), "sr",
                           BoundReport("|H3(1)|", h3_conjecture_value(), "conjecture", {"class": "sr"},
                                       status="conjecture")))
    return out


def witness_value(entry: MatrixEntry) -> float | None:
    """The functional at the entry's exact extremal c's (no search)."""
    if entry.witness_c is None:
        return None
    return entry.functional.evaluate(entry.cls, np.array(entry.witness_c))


def run_matrix(entries, budget: SearchBudget = SearchBudget(), sharp_tol: float = SHARP_TOL,
               workers: int = 1, backend: str | None = None) -> list[Verdict]:
    out = []
    for e in entries:
        v = verify_bound(e.functional, e.cls, e.bound, budget, sharp_tol, workers, backend)
        v.class_name = e.class_id
        v.witness_value = witness_value(e)
        out.append(v)
    return out
