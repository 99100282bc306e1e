"""HTTP service exposing the trace, basis, and class-number computations."""

import os

from fastapi import FastAPI, HTTPException

from . import basis, oracle, quadratic, schemas, selftest
from .characters import from_label
from .cyclo import equals
from .trace import SpaceSpec, trace_min

app = FastAPI(title="twistmin", version="0.1.0")

CLASS_CACHE_ENV = "TWISTMIN_CLASS_CACHE"


def _load_default_cache():
    path = os.environ.get(CLASS_CACHE_ENV)
    if path and os.path.exists(path):
        quadratic.load_class_cache(path)


_load_default_cache()


def _space(params):
    try:
        chi = from_label(params.character)
        if chi.modulus != params.level:
            raise ValueError("character modulus %d does not match level %d"
                             % (chi.modulus, params.level))
        return SpaceSpec(params.level, params.weight, chi, params.kind)
    except (ValueError, AssertionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError,) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except AssertionError as exc:
        raise HTTPException(status_code=500, detail="internal inconsistency: %s" % exc)


def _trace_fn(kind):
    return {"min": trace_min, "new": oracle.trace_new,
            "full": oracle.trace_full}[kind]


@app.post("/trace", response_model=schemas.TraceResponse)
def trace(req: schemas.TraceRequest):
    spec = _space(req.space)
    fn = _trace_fn(spec.kind)
    records = []
    verified = None
    if req.verify and spec.kind == "min":
        verified = True
    for n in range(1, req.nmax + 1):
        val = _guard(fn, spec, n)
        rec = schemas.TraceRecord(n=n, value=schemas.cyclo_to_json(val))
        if req.verify and spec.kind == "min":
            other = _guard(oracle.trace_min_sieved, spec, n)
            rec.value_checked = schemas.cyclo_to_json(other)
            if not equals(val, other):
                verified = False
        records.append(rec)
    return schemas.TraceResponse(records=records, verified=verified)


@app.post("/dim", response_model=schemas.DimResponse)
def dim(req: schemas.DimRequest):
    spec = _space(req.space)
    return schemas.DimResponse(dimension=_guard(basis.dimension, spec))


@app.post("/basis", response_model=schemas.BasisResponse)
def basis_endpoint(req: schemas.BasisRequest):
    spec = _space(req.space)
    B = req.truncation or basis.sturm_bound(spec)
    bm = _guard(basis.basis_for, spec, B)
    return schemas.BasisResponse(
        truncation=bm.truncation,
        labels=bm.labels,
        entries=[[schemas.cyclo_to_json(x) for x in row] for row in bm.entries],
        certified_rank=bm.certified_rank,
    )


@app.post("/newform-coeffs", response_model=schemas.NewformCoeffsResponse)
def newform_coeffs(req: schemas.NewformCoeffsRequest):
    spec = _space(req.space)
    if spec.kind != "min":
        raise HTTPException(status_code=422,
                            detail="coefficient transfer starts from kind=min")
    try:
        psi = from_label(req.psi)
    except (ValueError, AssertionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    if psi.modulus != psi.conductor():
        raise HTTPException(status_code=422, detail="psi must be primitive")
    dim_val = _guard(basis.dimension, spec)
    if dim_val != 1:
        raise HTTPException(
            status_code=422,
            detail="source space has dimension %d; the trace form is a "
                   "normalized eigenform only in dimension 1" % dim_val)
    f = _guard(basis.trace_form, spec, req.nmax)
    M, chi_new, g = _guard(basis.newform_coeffs_from_min, f, psi)
    records = [schemas.TraceRecord(n=n, value=schemas.cyclo_to_json(g.coeff(n)))
               for n in range(1, req.nmax + 1)]
    return schemas.NewformCoeffsResponse(level=M, character=chi_new.label(),
                                         records=records)


@app.post("/class-numbers", response_model=schemas.ClassNumbersResponse)
def class_numbers(req: schemas.ClassNumbersRequest):
    entries = []
    for d in range(req.min_d, 0):
        if not quadratic.is_fundamental_discriminant(d):
            continue
        h, w = _guard(quadratic.class_data, d)
        entries.append(schemas.ClassNumberEntry(d=d, h=h, w=w))
    entries.sort(key=lambda e: -e.d)
    return schemas.ClassNumbersResponse(entries=entries)


@app.post("/selftest", response_model=schemas.SelftestResponse)
def selftest_endpoint(req: schemas.SelftestRequest):
    checks, failures = selftest.run_selftest(
        max_level=req.max_level, weights=tuple(req.weights), nmax=req.nmax)
    return schemas.SelftestResponse(passed=not failures, checks=checks,
                                    failures=failures)
