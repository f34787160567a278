from scaperture.experiments.compare import DeviationReport, compare_engines
from scaperture.experiments.coupling import CouplingEstimate, coupling_estimate, numeric_coupling
from scaperture.experiments.fitting import PowerLawFit, fit_power_law
from scaperture.experiments.grids import scenario_grid
from scaperture.experiments.smoothing import smooth
from scaperture.experiments.sweeps import SweepResult, sweep

__all__ = [
    "CouplingEstimate",
    "DeviationReport",
    "PowerLawFit",
    "SweepResult",
    "compare_engines",
    "coupling_estimate",
    "fit_power_law",
    "numeric_coupling",
    "scenario_grid",
    "smooth",
    "sweep",
]
