"""Intersection theory on Grassmannians, projective spaces and projective bundles."""
from .bundles import (BundleClass, UnsupportedRankError, blowup_excep_push, chern_dual,
                      chern_sym, chern_tensor, chern_tensor_line, plucker_degree_formula,
                      proj_bundle_push, segre)
from .partitions import Partition, box_partitions, horizontal_strips, jacobi_trudi
from .rings import (AmbientMismatchError, ChowClass, ChowRing, Grassmannian, ProjectiveBundle,
                    ProjectiveSpace, integrate)

__all__ = [
    "AmbientMismatchError", "BundleClass", "ChowClass", "ChowRing", "Grassmannian",
    "Partition", "ProjectiveBundle", "ProjectiveSpace", "UnsupportedRankError",
    "blowup_excep_push", "box_partitions", "chern_dual", "chern_sym", "chern_tensor",
    "chern_tensor_line", "grassmannian_plucker_degree", "horizontal_strips", "integrate",
    "jacobi_trudi", "pieri", "plucker_degree_formula", "proj_bundle_push", "schubert_mul",
    "segre",
]


def pieri(lam, m: int, k: int, n: int) -> ChowClass:
    """sigma_lam * sigma_m in G(k, n)."""
    from .partitions import pieri_terms
    lam = Partition(lam)
    if not lam.fits(k, n):
        raise ValueError(f"{lam} does not fit in the {k}x{n - k} box")
    return ChowClass(Grassmannian(k, n), pieri_terms(lam, m, k, n))


def schubert_mul(a: ChowClass, b: ChowClass) -> ChowClass:
    if not isinstance(a.ring, Grassmannian):
        raise AmbientMismatchError("schubert_mul needs Grassmannian classes")
    return a * b


def grassmannian_plucker_degree(k: int, n: int) -> int:
    return plucker_degree_formula(k, n)
