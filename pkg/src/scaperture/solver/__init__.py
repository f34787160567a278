from scaperture.solver.kernel import (
    assemble_kernel,
    boundary_correction,
    cell_integrated_kernel,
)
from scaperture.solver.laplacian import assemble_laplacian, div_lambda_grad
from scaperture.solver.system import (
    BrandtSystem,
    SolverError,
    StreamSolution,
    applied_field,
    reconstruct_field,
    solve_stream,
)

__all__ = [
    "BrandtSystem",
    "SolverError",
    "StreamSolution",
    "applied_field",
    "assemble_kernel",
    "assemble_laplacian",
    "boundary_correction",
    "cell_integrated_kernel",
    "div_lambda_grad",
    "reconstruct_field",
    "solve_stream",
]
