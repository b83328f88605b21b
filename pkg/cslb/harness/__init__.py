from cslb.harness.ExperimentSpec import ExperimentSpec
from cslb.harness.ExperimentReport import ExperimentReport, CellResult
from cslb.harness.metrics import afr, clean_accuracy, query_stats
from cslb.harness.grid import run_grid, run_cells, cell_seed
from cslb.harness.sweeps import sweep_alpha, sweep_k, run_sweeps
from cslb.harness.adaptive import run_adaptive_averaging, run_adaptive_stepsize, run_adaptive
from cslb.harness.report import emit_report, load_report, afr_table
