"""Crop forecasting pipeline with a tamper-evident prediction ledger.

Subpackages:
    dataset    loading, stratified splitting, min-max scaling
    models     seven classifiers, evaluation metrics, benchmark suite
    ledger     hash-chained block store executing the prediction contract
    telemetry  sensor simulator, message validation, windowed aggregation
    service    HTTP API and command line entry points
"""

__version__ = "0.1.0"
