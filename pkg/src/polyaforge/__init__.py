"""polyaforge: exact enumeration and exact-size uniform random generation of
unlabelled trees with degree restrictions, via cycle pointing, plus the CRT
diameter law and a statistical harness for the scaling/local limits."""

from .boltzmann import (BoltzmannContext, CyclePointedTree, build_context,
                        class_probabilities, sample_E_exact, sample_polya_exact,
                        sample_rooted_symmetry, sample_S_exact,
                        sample_set_partition, sample_unrooted_exact,
                        sample_V_exact)
from .counting import (CoeffTable, SetLayerTable, e_counts, free_counts,
                       rooted_counts, s_counts, series_family, set_layer,
                       v_counts)
from .crt import (broutin_flajolet_c, crt_diameter_moment, crt_diameter_tail,
                  gamma_half, zeta)
from .degrees import DegreeSet
from .oracle import brute_force_enumerate
from .rng import RandomSource
from .singularity import radius_of_convergence
from .stats import (DiameterSample, NeighborhoodDist, ScalingCalibration,
                    TailFit, calibrate_scaling, collect_diameters, fit_tail,
                    ks_distance, neighborhood_census, tv_distance)
from .trees import (RootedTree, Tree, canonical_code, centers,
                    degree_histogram, diameter, distance, free_canonical_code,
                    k_neighborhood)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
