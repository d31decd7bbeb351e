from .qroot2 import QRoot2, SQRT2
from .expoly import ExactPoly, InexactDivisionError
from .gpolys import gh_poly, go_poly, go_degree
from .ratfunc import RationalFunc
from .rationals import (LatticeError, OriginBehavior, ParameterPoint,
                        RationalSolution, ZeroPoleData, origin_behavior,
                        piv_residual, piv_residual_is_zero, rational_solution,
                        zeros_and_poles)
from .backlund import (TransformationUndefined, backlund, backlund_flip,
                       backlund_ne, backlund_nw, backlund_se, backlund_sw,
                       backlund_twist)
