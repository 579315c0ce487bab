"""Exact verification suites: genus identities, golden tables, classical identities."""

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .arith import divisors, fraction_str, is_prime, is_squarefree, omega, prime_divisors
from .forms import TernaryForm, aut_count, represent_count, theta_series
from .genera import (
    get_inventory,
    hurwitz_side,
    predicted_weighted_representation,
    theta_normalization,
    weighted_series,
)
from .hurwitz import class_number_4N, modified_H, type_number
from .local import GenusLabel, expected_labels, genus_label

TABLE_INCONSISTENCY = "table-internal inconsistency"
CODE_MISMATCH = "code-vs-table mismatch"


# ---------------------------------------------------------------------------
# q-series

@dataclass(frozen=True)
class QSeries:
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @property
    def n_max(self):
        return len(self.coefficients) - 1

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __add__(self, other):
        n = min(len(self), len(other))
        return QSeries(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n]))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = Fraction(k)
        return QSeries(k * c for c in self.coefficients)

    __rmul__ = scale

    def dilate(self, l):
        """Substitute q -> q^l, keeping the same truncation."""
        return QSeries(self.coefficients[n // l] if n % l == 0 else 0 for n in range(len(self)))

    def __str__(self):
        return " ".join(fraction_str(c) for c in self.coefficients)


def theta_genus(inv, g, n_max):
    if isinstance(g, str):
        g = GenusLabel.parse(g)
    if g not in inv.partition:
        raise KeyError(f"unknown genus {g} at level {inv.level}")
    return QSeries(weighted_series(inv, g, n_max)).scale(theta_normalization(g))


def theta_modified(d, N, l, n_max):
    """Coefficients H^(d,2N/d)(4n), dilated by l."""
    if N < 1 or N % 2 == 0 or not is_squarefree(N):
        raise ValueError(f"N={N} must be odd and squarefree")
    if d == 1 or (2 * N) % d:
        raise ValueError(f"d={d} must be a divisor of 2N={2 * N} other than 1")
    if l < 1 or N % l:
        raise ValueError(f"l={l} must divide N={N}")
    base = QSeries(modified_H(d, 2 * N // d, 4 * n) for n in range(n_max // l + 1))
    coeffs = [Fraction(0)] * (n_max + 1)
    for n in range(0, n_max + 1, l):
        coeffs[n] = base[n // l]
    return QSeries(coeffs)


# ---------------------------------------------------------------------------
# exact rank

def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def exact_rank(rows):
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = _integer_rows([[Fraction(x) for x in r] for r in rows])
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank, prev = 0, 1
    for col in range(n):
        pivot = next((i for i in range(rank, m) if A[i][col]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                A[i][j] = (A[i][j] * A[rank][col] - A[rank][j] * A[i][col]) // prev
            A[i][col] = 0
        prev = A[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


class InsufficientTermsError(ValueError):
    """Too few coefficients to certify independence."""


def eisenstein_series_family(N, l, n_max):
    return [theta_modified(d, N, l, n_max) for d in divisors(2 * N) if d != 1]


def eisenstein_rank(N, l, n_max):
    """Rank of {theta_{d,2N/d}(lz)}; expected 2^(s+1) - 1.

    Full rank certifies independence at any truncation. A deficient rank is
    only conclusive once n_max >= 4 * 2^(s+1); below that it is reported.
    """
    family = eisenstein_series_family(N, l, n_max)
    rank = exact_rank([list(s) for s in family])
    if rank < len(family) and n_max < 4 * 2 ** (omega(N) + 1):
        raise InsufficientTermsError(
            f"rank {rank} < {len(family)} with n_max={n_max} < {4 * 2 ** (omega(N) + 1)}; "
            "increase n_max to decide")
    return rank


# ---------------------------------------------------------------------------
# reports

@dataclass
class Check:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None
    detail: str = ""
    classification: str = ""

    def to_dict(self):
        d = {"name": self.name, "status": "pass" if self.passed else "fail",
             "lhs": _ser(self.lhs), "rhs": _ser(self.rhs)}
        if self.detail:
            d["detail"] = self.detail
        if self.classification:
            d["classification"] = self.classification
        return d


def _ser(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, int):
        return str(x)
    return x


@dataclass
class VerificationReport:
    suite: str
    parameters: dict
    checks: list = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, lhs, rhs, detail=""):
        self.checks.append(Check(name, lhs == rhs, lhs, rhs, detail))
        return self.checks[-1]

    def summary(self):
        n_fail = len(self.failures)
        return (f"{self.suite}: {len(self.checks) - n_fail}/{len(self.checks)} checks pass"
                + ("" if not n_fail else f", {n_fail} fail"))

    def to_dict(self, runtime=True):
        d = {"suite": self.suite, "parameters": self.parameters,
             "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if runtime:
            d["runtime_seconds"] = round(self.runtime, 3)
        return d

    def to_json(self, runtime=False):
        return json.dumps(self.to_dict(runtime), indent=1)

    def to_text(self):
        lines = [self.summary()]
        for c in self.failures:
            line = f"  FAIL {c.name}: {_ser(c.lhs)} != {_ser(c.rhs)}"
            if c.classification:
                line += f" [{c.classification}]"
            if c.detail:
                line += f" -- {c.detail}"
            lines.append(line)
        return "\n".join(lines)


class _timed:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.runtime = time.perf_counter() - self.t0


def _pmap(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# golden tables

@dataclass(frozen=True)
class TableRow:
    """sum_k k * R_form(n) = multiple * H^(N1,N2)(arg * n)."""
    label: str
    terms: tuple
    multiple: int
    N1: int
    N2: int
    arg: int

    @classmethod
    def parse(cls, line):
        label, terms, m, N1, N2, A = (x.strip() for x in line.split(";"))
        parsed = []
        for t in terms.split("+"):
            k, form = t.strip().split("*")
            parsed.append((int(k), TernaryForm.parse(form)))
        return cls(label, tuple(parsed), int(m), int(N1), int(N2), int(A))

    def lhs(self, n_max):
        out = [0] * (n_max + 1)
        for k, f in self.terms:
            for n, v in enumerate(theta_series(f, n_max)):
                out[n] += k * v
        return out

    def rhs(self, n):
        return self.multiple * modified_H(self.N1, self.N2, self.arg * n)

    def __str__(self):
        terms = " + ".join(f"{k}*R_({f})" for k, f in self.terms)
        return f"{self.label}: {terms} = {self.multiple}*H^({self.N1},{self.N2})({self.arg}n)"


def _data_lines(name):
    text = resources.files("tqf").joinpath("data", name).read_text()
    return [l for l in text.splitlines() if l.strip() and not l.startswith("#")]


def table_rows(selector):
    name = {"table2": "single_class_genera.txt", "table3": "level140_genera.txt"}[selector]
    return [TableRow.parse(l) for l in _data_lines(name)]


def appendix_a():
    """{(N1, N2): {D: value}} plus the classical column under key None."""
    lines = _data_lines("modified_hurwitz.txt")
    header = lines[0].split()[1:]
    keys = []
    for h in header:
        if h == "H":
            keys.append(None)
        else:
            a, b = h[3:-1].split(",")
            keys.append((int(a), int(b)))
    table = {k: {} for k in keys}
    for line in lines[1:]:
        D, *vals = line.split()
        for k, v in zip(keys, vals):
            table[k][int(D)] = Fraction(v)
    return table


def appendix_b():
    return {int(a) // 4: int(b) for a, b in (l.split() for l in _data_lines("class_numbers.txt"))}


def _classify_row(row, n_max):
    """Explain a failing row by checking it against the rest of the source's claims."""
    target = GenusLabel.parse(row.label)
    for _, f in row.terms:
        try:
            lab = genus_label(f, strict=False)
        except ValueError as exc:
            return TABLE_INCONSISTENCY, f"printed form {f} is invalid: {exc}"
        if lab != target:
            return TABLE_INCONSISTENCY, f"printed form {f} lies in {lab}, not {row.label}"
    scale, N1, N2, mult = hurwitz_side(target)
    if (N1, N2, mult) != (row.N1, row.N2, row.arg):
        return TABLE_INCONSISTENCY, (
            f"genus theorem pairs {row.label} with H^({N1},{N2})({mult}n)")
    # weights k/multiple must equal 1/(scale |Aut f|) when the genus is complete
    for k, f in row.terms:
        want = 1 / (scale * aut_count(f))
        if Fraction(k, row.multiple) != want:
            return TABLE_INCONSISTENCY, (
                f"genus theorem gives weight {fraction_str(want)} for R_({f}) "
                f"(|Aut|={aut_count(f)}), row has {k}/{row.multiple}")
    return CODE_MISMATCH, ""


def _check_row(args):
    row, n_max = args
    lhs = row.lhs(n_max)
    for n in range(n_max + 1):
        r = row.rhs(n)
        if lhs[n] != r:
            c = Check(row.label, False, Fraction(lhs[n]), r, f"first failure at n={n}")
            c.classification, why = _classify_row(row, n_max)
            if why:
                c.detail += "; " + why
            return c
    return Check(row.label, True, Fraction(lhs[n_max]), row.rhs(n_max), f"n<={n_max}")


def _table_implied_value(key, D, rows):
    """H^(N1,N2)(D) recomputed from lattice counts of a table row with that Hurwitz side."""
    for row in rows:
        if (row.N1, row.N2) == key and D % row.arg == 0:
            n = D // row.arg
            total = sum(k * represent_count(f, n) for k, f in row.terms)
            return Fraction(total, row.multiple), row.label
    return None, None


def check_golden_tables(selector, n_max=200, jobs=1):
    report = VerificationReport(selector, {"n_max": n_max})
    with _timed(report):
        if selector in ("table2", "table3"):
            rows = table_rows(selector)
            report.checks.extend(_pmap(_check_row, [(r, n_max) for r in rows], jobs))
        elif selector == "appendixA":
            report.parameters = {}
            rows = table_rows("table2") + table_rows("table3")
            for key, col in appendix_a().items():
                for D, printed in col.items():
                    if key is None:
                        from .hurwitz import hurwitz_H
                        got = hurwitz_H(D) if D else Fraction(-1, 12)
                        name = f"H({D})"
                    else:
                        got = modified_H(key[0], key[1], D)
                        name = f"H^({key[0]},{key[1]})({D})"
                    c = report.add(name, got, printed)
                    if not c.passed:
                        implied, via = (None, None) if key is None else _table_implied_value(key, D, rows)
                        if implied is not None and implied != printed:
                            c.classification = TABLE_INCONSISTENCY
                            c.detail = (f"lattice counts in row {via} give {fraction_str(implied)}, "
                                        f"contradicting the printed {fraction_str(printed)}")
                        else:
                            c.classification = CODE_MISMATCH
        elif selector == "appendixB":
            report.parameters = {"max": n_max}
            for N, printed in sorted(appendix_b().items()):
                if 4 * N <= n_max:
                    c = report.add(f"|C({4 * N})|", class_number_4N(N), printed)
                    if not c.passed:
                        c.classification = CODE_MISMATCH
        else:
            raise ValueError(f"unknown table {selector!r}")
    return report


# ---------------------------------------------------------------------------
# genus theorems

def check_genus_identities(N, n_max=100, cache_dir=None, use_cache=True):
    """Every genus of level 4N: weighted sum equals the predicted Hurwitz side, n = 0..n_max."""
    inv = get_inventory(N, cache_dir, use_cache)
    report = VerificationReport("theorem", {"N": N, "n_max": n_max})
    with _timed(report):
        for g in inv.genera():
            got = weighted_series(inv, g, n_max)
            bad = next((n for n in range(n_max + 1)
                        if got[n] != predicted_weighted_representation(g, n)), None)
            n = n_max if bad is None else bad
            report.add(str(g), got[n], predicted_weighted_representation(g, n),
                       f"n<={n_max}" if bad is None else f"first failure at n={n}")
    return report


def check_classification(N, cache_dir=None, use_cache=True):
    """Genus partition has 2^(2s+1) cells with the listed labels, and matches the class count."""
    inv = get_inventory(N, cache_dir, use_cache)
    report = VerificationReport("classification", {"N": N})
    with _timed(report):
        labels = sorted(inv.genera())
        report.add("cells", len(labels), 2 ** (2 * omega(N) + 1))
        report.add("labels", [str(g) for g in labels], [str(g) for g in expected_labels(N)])
        report.add("classes", len(inv.classes), class_number_4N(N))
    return report


TYPE_NUMBER_ONE = ((2, 1), (3, 1), (5, 1), (7, 1), (13, 1), (30, 1), (42, 1), (70, 1), (78, 1),
                   (2, 3), (2, 5), (2, 7), (2, 11), (2, 15), (2, 23), (3, 2), (3, 5), (3, 11),
                   (5, 2), (7, 3))


def admissible_type_pairs(bound):
    for NF in range(1, bound + 1):
        if not is_squarefree(NF):
            continue
        for N in divisors(NF):
            if omega(N) % 2 == 1:
                yield N, NF // N


def check_type_numbers(bound=200):
    report = VerificationReport("typenumbers", {"bound": bound})
    with _timed(report):
        for N, F in TYPE_NUMBER_ONE:
            report.add(f"T_{{{N},{F}}}", type_number(N, F), 1)
        for N, F in admissible_type_pairs(bound):
            try:
                T = type_number(N, F)
                report.add(f"T_{{{N},{F}}} positive integer", True, True, str(T))
            except ArithmeticError as exc:
                report.add(f"T_{{{N},{F}}} positive integer", False, True, str(exc))
    return report


# ---------------------------------------------------------------------------
# classical identities

SUM_OF_THREE_SQUARES = TernaryForm(1, 1, 1, 0, 0, 0)


def check_berkovich_jagy(p, n_max=100, cache_dir=None, use_cache=True):
    if p not in (3, 5, 7, 13):
        raise ValueError("p must be one of 3, 5, 7, 13")
    inv = get_inventory(p, cache_dir, use_cache)
    g1 = GenusLabel(4 * p, p * p, (p,))
    g2 = GenusLabel(4 * p, 16 * p * p, (p,))
    w1 = weighted_series(inv, g1, n_max)
    w2 = weighted_series(inv, g2, n_max)
    r3 = theta_series(SUM_OF_THREE_SQUARES, p * p * n_max)
    report = VerificationReport("berkovich-jagy", {"p": p, "n_max": n_max})
    with _timed(report):
        for n in range(n_max + 1):
            report.add(f"n={n}", Fraction(r3[p * p * n] - p * r3[n]), 48 * w1[n] - 96 * w2[n])
    return report


def _genus_average(D, N, m):
    return modified_H(D, N, 4 * m) / modified_H(D, N, 0)


def check_du(D, p, q, N, m_max=50):
    if not is_squarefree(D) or omega(D) % 2:
        raise ValueError(f"D={D} must be squarefree with an even number of prime factors")
    if p == q or not is_prime(p) or not is_prime(q) or D % p == 0 or D % q == 0:
        raise ValueError("p, q must be distinct primes not dividing D")
    from math import gcd
    if gcd(N, D * p * q) != 1:
        raise ValueError(f"N={N} must be coprime to Dpq")
    if not (is_squarefree(N * p) and is_squarefree(N * q)):
        raise ValueError("N must be squarefree")
    report = VerificationReport("du", {"D": D, "p": p, "q": q, "N": N, "m_max": m_max})
    with _timed(report):
        for m in range(1, m_max + 1):
            lhs = (Fraction(-2, q - 1) * _genus_average(D * p, N, m)
                   + Fraction(q + 1, q - 1) * _genus_average(D * p, N * q, m))
            rhs = (Fraction(-2, p - 1) * _genus_average(D * q, N, m)
                   + Fraction(p + 1, p - 1) * _genus_average(D * q, N * p, m))
            report.add(f"m={m}", lhs, rhs)
    return report


def check_auxiliary(primes=(3, 5, 7), n_max=100):
    report = VerificationReport("auxiliary", {"primes": list(primes), "n_max": n_max})
    with _timed(report):
        for p in primes:
            for n in range(n_max + 1):
                target = modified_H(2 * p, 1, 4 * n)
                report.add(f"p={p} n={n} (16n)",
                           modified_H(p, 1, 16 * n) - 2 * modified_H(p, 1, 4 * n), target)
                report.add(f"p={p} n={n} (n)",
                           modified_H(p, 1, 4 * n) - 2 * modified_H(p, 1, n), target)
    return report


def check_eisenstein(cases, n_max=50):
    report = VerificationReport("eisenstein", {"n_max": n_max})
    with _timed(report):
        for N, l in cases:
            want = 2 ** (omega(N) + 1) - 1
            try:
                report.add(f"N={N} l={l}", eisenstein_rank(N, l, n_max), want)
            except InsufficientTermsError as exc:
                rank = exact_rank([list(s) for s in eisenstein_series_family(N, l, n_max)])
                report.add(f"N={N} l={l}", rank, want, str(exc))
    return report


def check_theta_linearity(N, n_max=30, cache_dir=None, use_cache=True):
    """theta_genus equals the 2-power times the sum of per-class R/|Aut| series."""
    inv = get_inventory(N, cache_dir, use_cache)
    report = VerificationReport("theta-linearity", {"N": N, "n_max": n_max})
    with _timed(report):
        for g in inv.genera():
            total = QSeries([0] * (n_max + 1))
            for rec in inv.members(g):
                total = total + QSeries(theta_series(rec.form, n_max)).scale(Fraction(1, rec.aut))
            report.add(str(g), list(theta_genus(inv, g, n_max)),
                       list(total.scale(theta_normalization(g))))
    return report


def prime_of(N):
    return prime_divisors(N)[0] if N > 1 else 1
