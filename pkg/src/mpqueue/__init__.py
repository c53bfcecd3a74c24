"""Max-plus linear models of G/G/1 queues and tandem lines."""
from ._kernels import BACKEND
from .closed_forms import (
    ClosedFormResult,
    closed_system_example_closed_form,
    gg1_closed_form,
    tandem_closed_form,
    zero_buffer_two_server_closed_form,
)
from .des import EventLog, departures, simulate
from .errors import (
    DimensionError,
    EnumerationBudgetError,
    InputError,
    MaxPlusError,
    UnsupportedTopologyError,
)
from .models import (
    ServiceProfile,
    SystemSpec,
    build_closed_matrices,
    build_gg1_matrix,
    build_tandem_matrix,
    build_zero_buffer_matrix,
)
from .recursion import (
    run_closed_scalar,
    run_finite_buffer_scalar,
    run_gg1_scalar,
    run_matrix_recursion,
    run_scalar,
    run_tandem_scalar,
)
from .semiring import (
    E,
    EPS,
    big_oplus,
    big_otimes,
    identity,
    mat_mul,
    mat_vec,
    oplus,
    otimes,
)
from .trace import DepartureTrace
from .verify import EquivalenceReport, verify_equivalence

__version__ = "0.1.0"
