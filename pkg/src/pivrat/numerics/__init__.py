from .roots import PrecisionError, poly_roots, poly_roots_exact
from .quadrature import (BranchedSqrt, BranchTrackingError, Contour,
                         QuadratureError, Segment, circle, contour_integral,
                         contour_integral_branched, polyline, stadium)
from .elliptic import (EllipticDomainError, PoleProximityError,
                       complete_elliptic_K, complete_elliptic_Kprime, jacobi,
                       jacobi_dz)
from .theta import (ThetaDomainError, riemann_theta, riemann_theta_dz,
                    theta_K)
from .continuation import (BoundaryReached, NewtonError, damped_newton,
                           newton_continuation)
