"""Command-line front end: group database, result cache, JSON serialization.

Every command prints one JSON document on stdout.  Exit codes: 0 on
success; 1 on domain errors, with a machine-readable ``{"error", "detail"}``
body; 2 when a resource limit is exceeded (``--time-limit`` wall seconds or
``--max-steps`` reduction steps).

All numbers are exact fraction strings and all polynomials canonical
strings, so every document re-parses into the internal types.  When a cache
root is configured (``--cache-dir`` or the ``CHEREDNIK_CACHE`` environment
variable), results are stored keyed by the group content hash, the command
with its canonicalized parameters, and the seed; a later identical run
replays the stored bytes verbatim.  Cache files are written to a temporary
name and renamed into place, so concurrent runs never see partial files.
"""

import hashlib
import json
import multiprocessing
import os
import re
import signal
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

import click

from . import cells
from . import families as fam
from .algebra import CherednikAlgebra, CherednikError
from .arrangement import (
    ArrangementError,
    RealArrangement,
    arrangement_path,
    available_arrangements,
)
from .center import (
    CenterError,
    CenterMap,
    embed_invariant,
    fundamental_invariants,
    poisson_bracket,
    poisson_matrix,
    presentation,
)
from .cells import CellsError
from .exact.scalars import rat
from .families import FamilyError
from .reflection import (
    GroupSpecError,
    available_groups,
    build_group,
    builtin_group_path,
)


class CLIError(Exception):
    """A malformed request (bad option values, unknown names)."""


class GroupNotFound(CLIError):
    """The requested group is neither shipped nor a readable file."""


class ResourceLimit(Exception):
    """A configured time or step budget was exhausted."""


class Budget:
    """Step counter handed to the heavy rewriting loops via ``tick()``."""

    def __init__(self, limit):
        self.limit = int(limit)
        self.used = 0

    def tick(self):
        self.used += 1
        if 0 < self.limit < self.used:
            raise ResourceLimit("step budget of %d exhausted" % self.limit)


@contextmanager
def _alarm(seconds):
    if not seconds or seconds <= 0:
        yield
        return

    def _handler(signum, frame):
        raise ResourceLimit("time limit of %gs exceeded" % seconds)

    old = signal.signal(signal.SIGALRM, _handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# ------------------------------------------------------------------ plumbing


def _category(exc):
    if isinstance(exc, GroupNotFound):
        return "group not found"
    for klass, name in (
        (GroupSpecError, "invalid group"),
        (CherednikError, "algebra error"),
        (CenterError, "center error"),
        (FamilyError, "families error"),
        (CellsError, "cellular error"),
        (ArrangementError, "arrangement error"),
        (CLIError, "usage error"),
    ):
        if isinstance(exc, klass):
            return name
    return "domain error"


def _fail(code, error, detail):
    click.echo(json.dumps({"error": error, "detail": detail}, sort_keys=True))
    sys.exit(code)


def _deliver(cache_root, key, compute):
    """Print the result for `key`, replaying the cached bytes when present."""
    path = None
    if cache_root:
        blob = json.dumps(key, sort_keys=True, separators=(",", ":")).encode("utf-8")
        path = os.path.join(cache_root, hashlib.sha256(blob).hexdigest() + ".json")
        if os.path.isfile(path):
            with open(path, "r", encoding="utf-8") as fh:
                click.echo(fh.read(), nl=False)
            return
    doc = compute()
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        os.makedirs(cache_root, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=cache_root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
    click.echo(text, nl=False)


_DOMAIN_ERRORS = (
    CLIError,
    GroupSpecError,
    CherednikError,
    CenterError,
    FamilyError,
    CellsError,
    ArrangementError,
)


def _execute(ctx, time_limit, builder):
    try:
        with _alarm(time_limit):
            key, compute = builder()
            _deliver(ctx.obj.get("cache"), key, compute)
    except ResourceLimit as exc:
        _fail(2, "resource limit", str(exc))
    except _DOMAIN_ERRORS as exc:
        _fail(1, _category(exc), str(exc))


def _envelope(command, group=None, group_hash=None, parameters=None, seed=None, result=None):
    return {
        "command": command,
        "group": group,
        "group_hash": group_hash,
        "parameters": parameters,
        "seed": seed,
        "result": result,
    }


# ------------------------------------------------------------ group database


def _load_group(source):
    """Resolve a group name or file path; returns (group, content hash)."""
    if os.path.sep in source or source.endswith(".json"):
        path = source
        if not os.path.isfile(path):
            raise GroupNotFound("no group file at %s" % path)
    else:
        path = builtin_group_path(source)
        if not os.path.isfile(path):
            raise GroupNotFound(
                "no group named %r; shipped groups: %s"
                % (source, ", ".join(available_groups()))
            )
    with open(path, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    return build_group(path), digest


def _hash_file(path, missing):
    if not os.path.isfile(path):
        raise CLIError(missing)
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


# ------------------------------------------------------- parameter handling

_C_NAME = re.compile(r"^[cC](\d*)$")


def _parse_assignments(at_options):
    """Name -> exact rational from one or more 'name=v[,name=v...]' options."""
    out = {}
    for chunk in at_options:
        for piece in chunk.split(","):
            piece = piece.strip()
            if not piece:
                continue
            name, eq, val = piece.partition("=")
            if not eq:
                raise CLIError("cannot parse %r; expected name=value" % piece)
            name = name.strip()
            try:
                q = rat(val.strip())
            except Exception:
                raise CLIError("cannot parse value %r for parameter %s" % (val.strip(), name))
            if name in out:
                raise CLIError("parameter %r assigned twice" % name)
            out[name] = q
    return out


def _point(group, assign):
    """Canonicalize --at assignments to a full coordinate vector.

    Returns (basis, values, canon): basis "C" when every name is a per-class
    value c/c1/c2/..., otherwise "K" (hyperplane coordinates and their
    aliases); values is the full rational coordinate list; canon maps
    canonical names to fraction strings for metadata and cache keys."""
    if not assign:
        raise CLIError("this command needs --at name=value assignments")
    if all(_C_NAME.match(n) for n in assign):
        vals = [rat(0)] * group.n_param
        seen = set()
        for n, q in assign.items():
            suffix = _C_NAME.match(n).group(1)
            if suffix == "":
                if group.n_param != 1:
                    raise CLIError(
                        "plain 'c' needs a one-parameter group; %s has %d reflection classes"
                        % (group.name, group.n_param)
                    )
                i = 0
            else:
                i = int(suffix) - 1
            if not 0 <= i < group.n_param:
                raise CLIError(
                    "no reflection class %s for %s (it has %d)"
                    % (n, group.name, group.n_param)
                )
            if i in seen:
                raise CLIError("parameter c%d assigned twice" % (i + 1))
            seen.add(i)
            vals[i] = q
        canon = {"c%d" % (i + 1): str(v) for i, v in enumerate(vals)}
        return "C", vals, canon
    kv = fam.k_point(group, assign)
    canon = {group.k_names[i]: str(v) for i, v in enumerate(kv)}
    return "K", kv, canon


def _as_kpoint(group, basis, vals):
    """K coordinates of a canonical point, converting from class values."""
    if basis == "K":
        return vals
    f = group.field
    kf = group.k_of_c([f.of(v) for v in vals])
    out = []
    for a in kf:
        if not f.is_rational(a):
            raise CLIError(
                "these class values correspond to an irrational point in the %s coordinates"
                % "/".join(group.k_names)
            )
        out.append(f.to_rational(a))
    return out


def _char_ref(group, ref):
    """Resolve a 1-based index or a chi<i>_d<deg> label to (index, label)."""
    labels = cells.character_labels(group)
    t = str(ref).strip()
    if t.isdigit():
        i = int(t) - 1
        if not 0 <= i < len(labels):
            raise CLIError("character index %s out of range 1..%d" % (t, len(labels)))
        return i, labels[i]
    if t in labels:
        return labels.index(t), t
    short = [lb.split("_")[0] for lb in labels]
    if t in short:
        i = short.index(t)
        return i, labels[i]
    raise CLIError("unknown character %r; labels: %s" % (t, ", ".join(labels)))


def _parts_labels(labels, parts):
    return [[labels[i] for i in sorted(p)] for p in parts]


def _pbw_payload(elem):
    """A PBW element as {group element index: coefficient polynomial string}."""
    return {str(w): str(p) for w, p in sorted(elem.coeffs.items())}


# ------------------------------------------------------------- parallel work

_POOL_STATE = None


def _gen_worker(i):
    alg, gens, seed = _POOL_STATE
    z = alg.trunc_inverse(embed_invariant(alg, gens[i]), regular_seed=seed)
    return i, _pbw_payload(z)


def _poisson_worker(pair):
    alg, cmap = _POOL_STATE
    i, j = pair
    br = poisson_bracket(alg, cmap.zgens[i], cmap.zgens[j])
    F = cmap.preimage(br) if br else cmap.ring_z.zero
    return i, j, str(F), str(F.scale(alg.group.field.of(-1)))


def _parallel_map(state, worker, items, jobs):
    global _POOL_STATE
    _POOL_STATE = state
    try:
        ctxm = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctxm) as ex:
            return list(ex.map(worker, items))
    finally:
        _POOL_STATE = None


# ------------------------------------------------------------------ commands


@click.group()
@click.option(
    "--cache-dir",
    envvar="CHEREDNIK_CACHE",
    default=None,
    help="Cache root; also read from CHEREDNIK_CACHE.",
)
@click.option("--no-cache", is_flag=True, default=False, help="Disable the result cache.")
@click.pass_context
def main(ctx, cache_dir, no_cache):
    """Exact computations for rational Cherednik algebras at t=0."""
    ctx.obj = {"cache": None if no_cache else cache_dir}


_group_opt = click.option("--group", "group_src", required=True, help="Group name or JSON file path.")
_time_opt = click.option("--time-limit", type=float, default=None, help="Wall-clock limit in seconds (exit 2 when exceeded).")
_jobs_opt = click.option("--jobs", type=int, default=1, help="Worker processes for independent subcomputations.")
_bound_opt = click.option("--degree-bound", type=int, default=None, help="Search bound for the invariant generators.")


@main.command("group-info")
@_group_opt
@_time_opt
@click.pass_context
def cmd_group_info(ctx, group_src, time_limit):
    """Orders, classes, characters, and parameter coordinates of a group."""

    def builder():
        g, gh = _load_group(group_src)
        key = {"command": "group-info", "group_hash": gh}

        def compute():
            result = {
                "name": g.name,
                "order": g.order,
                "dim": g.dim,
                "field": repr(g.field),
                "reflection_count": len(g.reflections),
                "class_count": len(g.classes),
                "class_sizes": list(g.class_sizes),
                "hyperplane_count": len(g.hyperplanes),
                "orbit_orders": list(g.orbit_orders),
                "parameter_names": list(g.k_names),
                "character_degrees": [int(d) for d in g.character_degrees()],
                "character_labels": cells.character_labels(g),
            }
            return _envelope("group-info", g.name, gh, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("center-generators")
@_group_opt
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the regular-vector choice (the result is independent of it).")
@_jobs_opt
@_bound_opt
@_time_opt
@click.pass_context
def cmd_center_generators(ctx, group_src, seed, jobs, degree_bound, time_limit):
    """Algebraically independent central lifts of the fundamental invariants."""

    def builder():
        g, gh = _load_group(group_src)
        key = {
            "command": "center-generators",
            "group_hash": gh,
            "seed": seed,
            "degree_bound": degree_bound,
        }

        def compute():
            sys_ = fundamental_invariants(g, degree_bound=degree_bound)
            alg = CherednikAlgebra(g)
            if jobs > 1:
                got = _parallel_map((alg, sys_.gens, seed), _gen_worker, range(len(sys_.gens)), jobs)
                payloads = [p for _, p in sorted(got)]
            else:
                payloads = [
                    _pbw_payload(alg.trunc_inverse(embed_invariant(alg, f), regular_seed=seed))
                    for f in sys_.gens
                ]
            result = {
                "count": len(sys_.gens),
                "ring_variables": list(alg.ring.names),
                "generators": [
                    {
                        "index": i + 1,
                        "bidegree": list(sys_.bidegrees[i]),
                        "invariant": str(sys_.gens[i]),
                        "element": payloads[i],
                    }
                    for i in range(len(sys_.gens))
                ],
            }
            return _envelope("center-generators", g.name, gh, seed=seed, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("presentation")
@_group_opt
@click.option("--max-steps", type=int, default=0, help="Abort (exit 2) after this many rewriting steps; 0 = unlimited.")
@_bound_opt
@_time_opt
@click.pass_context
def cmd_presentation(ctx, group_src, max_steps, degree_bound, time_limit):
    """Relations presenting the center over the parameter ring."""

    def builder():
        g, gh = _load_group(group_src)
        key = {"command": "presentation", "group_hash": gh, "degree_bound": degree_bound}

        def compute():
            sys_ = fundamental_invariants(g, degree_bound=degree_bound)
            alg = CherednikAlgebra(g)
            budget = Budget(max_steps) if max_steps else None
            pres = presentation(alg, sys_, budget=budget)
            result = {
                "generator_count": len(pres.gens),
                "ring_variables": list(pres.ring_z.names),
                "variable_bidegrees": [list(b) for b in pres.ring_z.bidegrees],
                "relation_count": len(pres.relations),
                "relations": [
                    {"index": i + 1, "bidegree": list(r.bidegree()), "string": str(r)}
                    for i, r in enumerate(pres.relations)
                ],
            }
            return _envelope("presentation", g.name, gh, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("poisson-matrix")
@_group_opt
@_jobs_opt
@_bound_opt
@_time_opt
@click.pass_context
def cmd_poisson_matrix(ctx, group_src, jobs, degree_bound, time_limit):
    """Brackets of the center generators in the presentation variables."""

    def builder():
        g, gh = _load_group(group_src)
        key = {"command": "poisson-matrix", "group_hash": gh, "degree_bound": degree_bound}

        def compute():
            sys_ = fundamental_invariants(g, degree_bound=degree_bound)
            alg = CherednikAlgebra(g)
            cmap = CenterMap(alg, sys_)
            n = len(cmap.zgens)
            if jobs > 1:
                pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
                strings = [["0"] * n for _ in range(n)]
                for i, j, sij, sji in _parallel_map((alg, cmap), _poisson_worker, pairs, jobs):
                    strings[i][j] = sij
                    strings[j][i] = sji
            else:
                rows = poisson_matrix(alg, sys_, cmap=cmap)
                strings = [[str(F) for F in row] for row in rows]
            result = {
                "size": n,
                "ring_variables": list(cmap.ring_z.names),
                "matrix": strings,
            }
            return _envelope("poisson-matrix", g.name, gh, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("families")
@_group_opt
@click.option("--at", "at_options", multiple=True, help="Parameter point, e.g. --at k1=1,k2=1 or --at c=1/2.")
@click.option("--hyperplane", default=None, help="Restrict to a parameter hyperplane, e.g. \"K1_1-K2_1\".")
@click.option("--generic", "generic_flag", is_flag=True, default=False, help="Partition at a generic parameter (the default mode).")
@_time_opt
@click.pass_context
def cmd_families(ctx, group_src, at_options, hyperplane, generic_flag, time_limit):
    """Blocks of irreducible characters by central-character agreement."""

    def builder():
        modes = sum((bool(at_options), hyperplane is not None, generic_flag))
        if modes > 1:
            raise CLIError("choose one of --at, --hyperplane, --generic")
        g, gh = _load_group(group_src)
        canon = None
        basis = vals = None
        form_str = None
        if at_options:
            mode = "point"
            basis, vals, canon = _point(g, _parse_assignments(at_options))
        elif hyperplane is not None:
            mode = "hyperplane"
            form_str = str(fam.parse_form(g, hyperplane))
        else:
            mode = "generic"
        key = {
            "command": "families",
            "group_hash": gh,
            "mode": mode,
            "point": canon,
            "hyperplane": form_str,
        }

        def compute():
            table = fam.central_char_table(g)
            labels = table.labels()
            if mode == "point":
                part = fam.families_at_point(table, _as_kpoint(g, basis, vals))
            elif mode == "hyperplane":
                part = fam.families_on_hyperplane(table, form_str)
            else:
                part = fam.generic_families(table)
            result = {
                "mode": mode,
                "point": canon,
                "hyperplane": form_str,
                "labels": labels,
                "families": _parts_labels(labels, part.parts),
                "part_sizes": list(part.sizes()),
            }
            return _envelope("families", g.name, gh, parameters=canon, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("hyperplanes")
@_group_opt
@_time_opt
@click.pass_context
def cmd_hyperplanes(ctx, group_src, time_limit):
    """Parameter hyperplanes where the generic partition coarsens."""

    def builder():
        g, gh = _load_group(group_src)
        key = {"command": "hyperplanes", "group_hash": gh}

        def compute():
            table = fam.central_char_table(g)
            hyps = fam.cm_hyperplanes(table)
            result = {
                "names": list(g.k_names),
                "count": len(hyps),
                "forms": [str(h) for h in hyps],
                "coefficients": [list(h.coeffs) for h in hyps],
            }
            return _envelope("hyperplanes", g.name, gh, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("cuspidal")
@_group_opt
@click.option("--at", "at_options", multiple=True, required=True, help="Nonzero parameter point, e.g. --at a=1,b=1.")
@_time_opt
@click.pass_context
def cmd_cuspidal(ctx, group_src, at_options, time_limit):
    """Families whose central character kills all opposite-degree brackets."""

    def builder():
        g, gh = _load_group(group_src)
        basis, vals, canon = _point(g, _parse_assignments(at_options))
        key = {"command": "cuspidal", "group_hash": gh, "point": canon}

        def compute():
            table = fam.central_char_table(g)
            labels = table.labels()
            kv = _as_kpoint(g, basis, vals)
            parts = fam.cuspidal_families(table, kv)
            allfam = fam.families_at_point(table, kv)
            result = {
                "point": canon,
                "labels": labels,
                "families": _parts_labels(labels, allfam.parts),
                "cuspidal": _parts_labels(labels, parts),
                "count": len(parts),
            }
            return _envelope("cuspidal", g.name, gh, parameters=canon, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("cellular")
@_group_opt
@click.option("--at", "at_options", multiple=True, required=True, help="Parameter point, e.g. --at c=1 or --at k1=1,k2=1.")
@click.option("--seed", type=int, default=0, show_default=True, help="Sampling seed for the genericity certificate.")
@click.option("--rep", default=None, help="Also decompose through one irreducible model (1-based index or label).")
@_time_opt
@click.pass_context
def cmd_cellular(ctx, group_src, at_options, seed, rep, time_limit):
    """Characters cut out by generalized eigenspaces of a Gaudin operator."""

    def builder():
        g, gh = _load_group(group_src)
        basis, vals, canon = _point(g, _parse_assignments(at_options))
        rep_label = None
        rep_index = None
        if rep is not None:
            rep_index, rep_label = _char_ref(g, rep)
        key = {
            "command": "cellular",
            "group_hash": gh,
            "point": canon,
            "seed": seed,
            "rep": rep_label,
        }

        def compute():
            cval = vals if basis == "C" else dict(canon)
            res = cells.cellular_characters(g, cval, seed=seed)
            cells.verify_sum_identity(res)
            labels = cells.character_labels(g)
            entries = [
                {
                    "multiplicities": {labels[i]: m for i, m in enumerate(e.mults) if m},
                    "defect": e.defect,
                }
                for e in res.characters()
            ]
            y, v = res.point
            result = {
                "point": canon,
                "samples": res.samples,
                "sample": {"y": [str(q) for q in y], "v": [str(q) for q in v]},
                "square_free_degree": res.sqfree_degree,
                "factor_count": len(res.entries),
                "characters": entries,
            }
            if rep is not None:
                data = cells.cellular_run_rep(g, cval, y, v, rep_index)
                result["rep"] = {
                    "character": rep_label,
                    "factors": [
                        {"factor": str(Pi), "multiplicity": m} for Pi, m in data
                    ],
                }
            return _envelope("cellular", g.name, gh, parameters=canon, seed=seed, result=result)

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("arrangement")
@click.option("--from-group", "from_group", default=None, help="Use the group's own parameter hyperplanes.")
@click.option("--file", "file_path", default=None, help="Arrangement JSON file {dim, orbit_orders, forms}.")
@click.option("--name", "builtin_name", default=None, help="Shipped arrangement name (see docs/formats.md).")
@_time_opt
@click.pass_context
def cmd_arrangement(ctx, from_group, file_path, builtin_name, time_limit):
    """Intersection-lattice invariants and chamber counts of a real arrangement."""

    def builder():
        chosen = [x for x in (from_group, file_path, builtin_name) if x is not None]
        if len(chosen) != 1:
            raise CLIError("choose exactly one of --from-group, --file, --name")
        if from_group is not None:
            g, gh = _load_group(from_group)
            key = {"command": "arrangement", "source": "group", "group_hash": gh}
            source = {"kind": "group", "name": g.name, "hash": gh}
            make = lambda: RealArrangement.from_group(g)
            group_name = g.name
            group_hash = gh
        else:
            if builtin_name is not None:
                path = arrangement_path(builtin_name)
                if not os.path.isfile(path):
                    raise ArrangementError(
                        "unknown arrangement %r; shipped: %s"
                        % (builtin_name, ", ".join(available_arrangements()))
                    )
                label = builtin_name
            else:
                path = file_path
                if not os.path.isfile(path):
                    raise ArrangementError("no arrangement file at %s" % path)
                label = os.path.basename(path)
            fh_hash = _hash_file(path, "no arrangement file at %s" % path)
            key = {"command": "arrangement", "source": "file", "content_hash": fh_hash}
            source = {"kind": "file", "name": label, "hash": fh_hash}
            make = lambda: RealArrangement.from_file(path)
            group_name = None
            group_hash = None

        def compute():
            arr = make()
            pp = arr.poincare_polynomial()
            signs = arr.chamber_count_by_signs() if arr.dim <= 3 else None
            qft = arr.qft_count() if arr.orbit_orders is not None else None
            result = {
                "dim": arr.dim,
                "forms": [list(f) for f in arr.forms],
                "orbit_orders": list(arr.orbit_orders) if arr.orbit_orders is not None else None,
                "poincare": str(pp),
                "chambers": arr.chamber_count(),
                "chambers_by_signs": signs,
                "qft": qft,
            }
            doc = _envelope("arrangement", group_name, group_hash, result=result)
            doc["source"] = source
            return doc

        return key, compute

    _execute(ctx, time_limit, builder)


@main.command("martino")
@_group_opt
@click.option("--rouquier-file", "rouquier_file", required=True, help="JSON file with the reference family data (see docs/formats.md).")
@click.option("--require-equality", is_flag=True, default=False, help="Demand equality instead of union containment.")
@_time_opt
@click.pass_context
def cmd_martino(ctx, group_src, rouquier_file, require_equality, time_limit):
    """Compare computed families against supplied reference families."""

    def builder():
        g, gh = _load_group(group_src)
        rq_hash = _hash_file(rouquier_file, "no data file at %s" % rouquier_file)
        key = {
            "command": "martino",
            "group_hash": gh,
            "rouquier_hash": rq_hash,
            "require_equality": bool(require_equality),
        }

        def compute():
            with open(rouquier_file, "r", encoding="utf-8") as fh:
                try:
                    data = json.load(fh)
                except ValueError as exc:
                    raise CLIError("cannot parse %s: %s" % (rouquier_file, exc))
            table = fam.central_char_table(g)
            report = fam.martino_check(table, data, require_equality=require_equality)
            return _envelope("martino", g.name, gh, result=report)

        return key, compute

    _execute(ctx, time_limit, builder)


if __name__ == "__main__":
    main()
