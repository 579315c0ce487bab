"""Exhaustive class enumeration at level 4N, genus partition, masses, weighted representation sums."""

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .arith import divisors, is_squarefree, omega, prime_divisors
from .forms import TernaryForm, aut_count, divisor, reduce, theta_series
from .hurwitz import modified_H
from .local import GenusLabel, genus_label


@dataclass(frozen=True)
class EnumerationConfig:
    jobs: int = 1
    max_candidates: int = 1_000_000_000


class ResourceLimitError(RuntimeError):
    """Raised when the candidate space exceeds the configured bound."""


def level_discriminants(N):
    """N^2/N_r, 4N^2/N_r, 16N^2/N_r for every N_r | N."""
    ds = set()
    for Nr in divisors(N):
        for k in (1, 4, 16):
            ds.add(k * N * N // Nr)
    return sorted(ds)


def _candidates_for(d, a):
    """Reduced-shape sextuples of discriminant d with first coefficient a."""
    out = []
    b = a
    while 2 * a * b * b <= d:
        for t in range(-a, a + 1):
            den = 4 * a * b - t * t
            for s in range(-a, a + 1):
                if t * s < 0:
                    continue
                if t > 0 or s > 0:
                    rs = range(0, b + 1)
                elif t < 0 or s < 0:
                    rs = range(-b, 1)
                else:
                    rs = range(-b, b + 1)
                base = d + b * s * s
                for r in rs:
                    num = base - r * s * t + a * r * r
                    if num % den:
                        continue
                    c = num // den
                    if c >= b and 2 * a * b * c <= d:
                        out.append((a, b, c, r, s, t))
        b += 1
    return out


def _classes_from_candidates(cands, level):
    found = {}
    for cf in cands:
        f = TernaryForm(*cf)
        if not f.is_primitive or not f.is_positive_definite:
            continue
        if 4 * f.discriminant // divisor(f) != level or (4 * f.discriminant) % divisor(f):
            continue
        g = reduce(f)
        found.setdefault(g, None)
    return list(found)


def _work(args):
    d, a, level = args
    return _classes_from_candidates(_candidates_for(d, a), level)


@dataclass(frozen=True)
class ClassRecord:
    form: TernaryForm
    aut: int
    genus: GenusLabel

    def to_json(self):
        return json.dumps({"level": self.genus.level, "form": str(self.form),
                           "d": self.form.discriminant, "aut": self.aut, "genus": str(self.genus)},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, line):
        obj = json.loads(line)
        return cls(TernaryForm.parse(obj["form"]), obj["aut"], GenusLabel.parse(obj["genus"]))


@dataclass(frozen=True)
class ClassInventory:
    level: int
    classes: tuple
    partition: dict = field(compare=False)

    @property
    def N(self):
        return self.level // 4

    @classmethod
    def from_records(cls, level, records):
        records = tuple(sorted(records, key=lambda c: (c.form.discriminant, c.form.coefficients)))
        partition = {}
        for i, rec in enumerate(records):
            partition.setdefault(rec.genus, []).append(i)
        return cls(level, records, {g: tuple(v) for g, v in sorted(partition.items())})

    def genera(self):
        return list(self.partition)

    def members(self, g):
        if isinstance(g, str):
            g = GenusLabel.parse(g)
        if g not in self.partition:
            raise KeyError(f"unknown genus {g} at level {self.level}")
        return [self.classes[i] for i in self.partition[g]]


def _check_N(N):
    if N < 1 or N % 2 == 0 or not is_squarefree(N):
        raise ValueError(f"N={N} must be odd and squarefree")


def enumerate_classes(N, config=EnumerationConfig()):
    """All classes of primitive positive definite forms of level 4N."""
    _check_N(N)
    level = 4 * N
    tasks = []
    for d in level_discriminants(N):
        a = 1
        while 2 * a**3 <= d:
            tasks.append((d, a, level))
            a += 1
    budget = sum(_candidate_space(d, a) for d, a, _ in tasks)
    if budget > config.max_candidates:
        raise ResourceLimitError(f"candidate space {budget} exceeds bound for N={N}")
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as ex:
            results = list(ex.map(_work, tasks, chunksize=4))
    else:
        results = [_work(t) for t in tasks]
    forms = sorted({g for part in results for g in part})
    records = [ClassRecord(f, aut_count(f), genus_label(f)) for f in forms]
    return ClassInventory.from_records(level, records)


def _candidate_space(d, a):
    total = 0
    b = a
    while 2 * a * b * b <= d:
        total += (2 * a + 1) ** 2 * (b + 1)
        b += 1
    return total


# ---------------------------------------------------------------------------
# cache

def default_cache_dir():
    return Path(os.environ.get("TQF_CACHE_DIR", Path.home() / ".cache" / "tqf"))


def cache_path(level, cache_dir=None):
    return Path(cache_dir or default_cache_dir()) / f"level_{level}.jsonl"


def save_inventory(inv, cache_dir=None):
    path = cache_path(inv.level, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("".join(rec.to_json() + "\n" for rec in inv.classes))
    tmp.replace(path)
    return path


def load_inventory(level, cache_dir=None):
    path = cache_path(level, cache_dir)
    if not path.exists():
        return None
    records = [ClassRecord.from_json(line) for line in path.read_text().splitlines() if line.strip()]
    return ClassInventory.from_records(level, records)


_MEMORY = {}


def get_inventory(N, cache_dir=None, use_cache=True, config=EnumerationConfig()):
    """Inventory for level 4N, via in-process memo, then disk cache, then enumeration."""
    if use_cache and N in _MEMORY:
        return _MEMORY[N]
    inv = load_inventory(4 * N, cache_dir) if use_cache else None
    if inv is None:
        inv = enumerate_classes(N, config)
        if use_cache:
            save_inventory(inv, cache_dir)
    _MEMORY[N] = inv
    return inv


# ---------------------------------------------------------------------------
# masses and weighted sums

def genus_mass(inv, g):
    return sum((Fraction(1, rec.aut) for rec in inv.members(g)), Fraction(0))


_THETA = {}


def class_theta(form, n_max):
    """R_form(0..n_max), memoized with the longest series computed so far."""
    got = _THETA.get(form)
    if got is None or len(got) <= n_max:
        got = theta_series(form, max(n_max, 2 * len(got) if got else n_max))
        _THETA[form] = got
    return got[: n_max + 1]


def weighted_representation(inv, g, n):
    return weighted_series(inv, g, n)[n]


def weighted_series(inv, g, n_max):
    """[sum_f R_f(n)/|Aut f| for n in 0..n_max] over the classes of genus g."""
    out = [Fraction(0)] * (n_max + 1)
    for rec in inv.members(g):
        th = class_theta(rec.form, n_max)
        for n in range(n_max + 1):
            if th[n]:
                out[n] += Fraction(th[n], rec.aut)
    return out


def hurwitz_side(g):
    """(2-power scale, N1, N2, argument multiplier) so that the weighted sum at n is
    scale * H^(N1,N2)(mult * n)."""
    if isinstance(g, str):
        g = GenusLabel.parse(g)
    N = g.N
    s = omega(N)
    Nr = g.N_r
    t = g.t
    fam = g.family
    if fam == "N2":
        return Fraction(1, 2 ** (s + 1)), t, N // t, 4 * Nr
    if fam == "16N2":
        return Fraction(1, 2 ** (s + 1)), t, N // t, Nr
    # 4N^2/N_r: t is N_o or 2N_e, the partner level is 2N/t in both cases
    return Fraction(1, 2 ** (s + 2)), t, 2 * N // t, 4 * Nr


def predicted_weighted_representation(g, n):
    scale, N1, N2, mult = hurwitz_side(g)
    return scale * modified_H(N1, N2, mult * n)


def theta_normalization(g):
    """2^{s+1} for the N^2/N_r and 16N^2/N_r families, 2^{s+2} for 4N^2/N_r."""
    if isinstance(g, str):
        g = GenusLabel.parse(g)
    return 1 / hurwitz_side(g)[0]
