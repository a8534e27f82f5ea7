"""Sample analogues of the identifying functionals of PN and PS."""

import numpy as np

from src.data.models import MomentFunctionals
from src.nuisance.models import NuisanceFit


def moment_functionals(nf: NuisanceFit) -> MomentFunctionals:
    """Average the per-unit products of the nuisance predictions."""
    e, mu0, mu1 = nf.e_hat, nf.mu0_hat, nf.mu1_hat
    untreated = 1.0 - e

    return MomentFunctionals(
        mu0=float(np.mean(e * mu0)),
        mu1=float(np.mean(e * mu1)),
        mu=float(np.mean(e * mu0 * mu1)),
        bar_mu0=float(np.mean(mu0 * untreated)),
        bar_mu1=float(np.mean(mu1 * untreated)),
        bar_mu=float(np.mean(mu0 * mu1 * untreated)),
        barbar_mu0=float(np.mean((1.0 - mu0) * untreated)),
        barbar_mu1=float(np.mean((1.0 - mu1) * untreated)),
        n=nf.n,
    )
