"""Named estimators used by the CLI, the simulation study and the application runner."""

from dataclasses import dataclass
from typing import Callable, Dict, Optional

from src.data.models import Dataset
from src.errors import ArgumentError
from src.estimation import baselines, pn, ps
from src.estimation.bootstrap import BootstrapPlan
from src.estimation.types import Assumption, Estimand, Estimate, Method
from src.nuisance.models import NuisanceFit

MONO, INDE = Assumption.MONOTONICITY, Assumption.COND_INDEPENDENCE


@dataclass(frozen=True)
class EstimatorSpec:
    name: str
    estimand: Estimand
    method: Method
    assumption: Assumption
    compute: Callable[[Dataset, NuisanceFit, Optional[BootstrapPlan]], Estimate]
    known_e: bool = False  # needs a Known propensity
    bootstrap: bool = False  # SE comes from the bootstrap


def _plain(fn):
    """Adapt an (d, nf) estimator to the (d, nf, plan) calling convention."""
    return lambda d, nf, plan=None: fn(d, nf)


def _with_assumption(fn, assumption):
    return lambda d, nf, plan=None: fn(d, nf, assumption, plan)


ESTIMATORS: Dict[str, EstimatorSpec] = {
    spec.name: spec
    for spec in (
        EstimatorSpec("pn_mono", Estimand.PN, Method.PROPOSED, MONO, _plain(pn.pn_mono)),
        EstimatorSpec("pn_inde", Estimand.PN, Method.PROPOSED, INDE, _plain(pn.pn_inde)),
        EstimatorSpec(
            "pn_mono_known_e", Estimand.PN, Method.PROPOSED_KNOWN_E, MONO,
            _plain(pn.pn_mono_known_e), known_e=True,
        ),
        EstimatorSpec(
            "pn_inde_known_e", Estimand.PN, Method.PROPOSED_KNOWN_E, INDE,
            _plain(pn.pn_inde_known_e), known_e=True,
        ),
        EstimatorSpec("pn_ipw", Estimand.PN, Method.IPW, MONO, baselines.pn_ipw, bootstrap=True),
        EstimatorSpec("pn_or", Estimand.PN, Method.OR, MONO, baselines.pn_or, bootstrap=True),
        EstimatorSpec(
            "pn_plugin_mono", Estimand.PN, Method.PLUGIN, MONO,
            _with_assumption(baselines.pn_plugin, MONO), bootstrap=True,
        ),
        EstimatorSpec(
            "pn_plugin_inde", Estimand.PN, Method.PLUGIN, INDE,
            _with_assumption(baselines.pn_plugin, INDE), bootstrap=True,
        ),
        EstimatorSpec("ps_mono", Estimand.PS, Method.PROPOSED, MONO, _plain(ps.ps_mono)),
        EstimatorSpec("ps_inde", Estimand.PS, Method.PROPOSED, INDE, _plain(ps.ps_inde)),
        EstimatorSpec(
            "ps_mono_known_e", Estimand.PS, Method.PROPOSED_KNOWN_E, MONO,
            ps.ps_mono_known_e, known_e=True, bootstrap=True,
        ),
        EstimatorSpec(
            "ps_inde_known_e", Estimand.PS, Method.PROPOSED_KNOWN_E, INDE,
            ps.ps_inde_known_e, known_e=True, bootstrap=True,
        ),
        EstimatorSpec(
            "ps_plugin_mono", Estimand.PS, Method.PLUGIN, MONO,
            _with_assumption(baselines.ps_plugin, MONO), bootstrap=True,
        ),
        EstimatorSpec(
            "ps_plugin_inde", Estimand.PS, Method.PLUGIN, INDE,
            _with_assumption(baselines.ps_plugin, INDE), bootstrap=True,
        ),
    )
}


def get_estimator(name: str) -> EstimatorSpec:
    try:
        return ESTIMATORS[name]
    except KeyError:
        raise ArgumentError(
            f"Unknown estimator {name!r}; choose from {', '.join(ESTIMATORS)}"
        )


def proposed_name(estimand: Estimand, assumption: Assumption, known_e: bool = False) -> str:
    suffix = "_known_e" if known_e else ""
    return f"{estimand.value}_{assumption.value}{suffix}"


def known_e_counterpart(spec: EstimatorSpec) -> Optional[EstimatorSpec]:
    """The known-propensity twin of a proposed estimator, if it has one."""
    if spec.method != Method.PROPOSED:
        return None
    return ESTIMATORS[proposed_name(spec.estimand, spec.assumption, known_e=True)]


def run_estimator(
    name: str, d: Dataset, nf: NuisanceFit, plan: Optional[BootstrapPlan] = None
) -> Estimate:
    return get_estimator(name).compute(d, nf, plan)
