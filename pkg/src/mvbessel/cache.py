"""On-disk memo of Jack and Bessel polynomials.

Activated by the ``MVBESSEL_CACHE_DIR`` environment variable.  Values are
stored as plain term dictionaries (no FLINT objects), pickled to one file.
"""

from __future__ import annotations

import os
import pickle
from pathlib import Path

from . import bessel, jack
from .field import ParamRational
from .jack import JackExpansion
from .sympoly import SymmetricPolynomial

ENV_VAR = "MVBESSEL_CACHE_DIR"
_FILE = "polynomials.pkl"
_VERSION = 1


def cache_dir() -> Path | None:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else None


def _pack_r(c: ParamRational):
    return (c.num.terms, c.den.terms)


def _unpack_r(t) -> ParamRational:
    return ParamRational.from_terms(*t)


def _pack_sym(f: SymmetricPolynomial):
    return (f.n, {tuple(mu): _pack_r(c) for mu, c in f.coeffs.items()})


def _unpack_sym(t) -> SymmetricPolynomial:
    n, d = t
    return SymmetricPolynomial(n, {mu: _unpack_r(c) for mu, c in d.items()})


def save(directory: Path | None = None) -> Path | None:
    directory = directory or cache_dir()
    if directory is None:
        return None
    directory.mkdir(parents=True, exist_ok=True)
    data = {
        "version": _VERSION,
        "jack": {(tuple(k[0]), k[1], k[2]): _pack_sym(v) for k, v in jack._jack_cache.items()},
        "bessel": {(tuple(k[0]), k[1]): (_pack_sym(Y.monomial_form),
                                         {tuple(mu): _pack_r(c) for mu, c in Y.jack_coeffs.coeffs.items()},
                                         _pack_r(Y.eigenvalue))
                   for k, Y in bessel._bessel_cache.items()},
    }
    path = directory / _FILE
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        pickle.dump(data, fh, protocol=pickle.HIGHEST_PROTOCOL)
    os.replace(tmp, path)
    return path


def load(directory: Path | None = None) -> int:
    """Populate the in-memory caches; returns the number of entries loaded."""
    from .partitions import Partition

    directory = directory or cache_dir()
    if directory is None or not (directory / _FILE).exists():
        return 0
    with open(directory / _FILE, "rb") as fh:
        data = pickle.load(fh)
    if data.get("version") != _VERSION:
        return 0
    count = 0
    for (lam, n, kappa), v in data["jack"].items():
        jack._jack_cache.setdefault((Partition(lam), n, kappa), _unpack_sym(v))
        count += 1
    for (lam, n), (mono, jc, eig) in data["bessel"].items():
        lam = Partition(lam)
        Y = bessel.BesselPolynomial(lam, n, JackExpansion(n, {mu: _unpack_r(c) for mu, c in jc.items()}),
                                    _unpack_sym(mono), _unpack_r(eig))
        bessel._bessel_cache.setdefault((lam, n), Y)
        count += 1
    return count
