"""Curved N-body dynamics on S2, S3, H2 and H3."""

import json as _json

from ._core import (
    DomainExit,
    Error,
    InvalidArgument,
    SingularPair,
    __version__,
    acceleration,
    angular_momentum,
    det_A_cartesian,
    det_A_polar,
    family_state,
    inner,
    integrate,
    ne_identity_residual,
    neh_identity_residual,
    nh_identity_residual,
    pe_identity_residual,
    releq_2d_mismatch,
    run_cli,
    total_energy,
    verify_json,
)


def verify(theorem, grid=(), tol=(), reading=""):
    """Runs one theorem check and returns the report as a dict."""
    return _json.loads(verify_json(theorem, list(grid), list(tol), reading))


def family(name, **params):
    """Initial state of a solution family, e.g. family("rectangle_releq_2d", alpha=0.7853981633974483, r=0.8)."""
    return family_state(_json.dumps(dict(params, name=name)))
