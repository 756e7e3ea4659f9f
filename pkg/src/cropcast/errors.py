"""Exception hierarchy shared across the package."""


class CropcastError(Exception):
    """Base class for all errors raised by this package."""


# -- dataset ---------------------------------------------------------------

class DatasetError(CropcastError):
    pass


class SchemaError(DatasetError):
    """CSV header does not match the expected column set."""


class RowParseError(DatasetError):
    def __init__(self, row_index: int, message: str):
        super().__init__(f"row {row_index}: {message}")
        self.row_index = row_index


class EmptyDatasetError(DatasetError):
    pass


class InvalidReadingError(DatasetError):
    """A sensor reading violates its base invariants."""


class StratificationError(DatasetError):
    """A label has too few samples for a stratified split."""


# -- models ----------------------------------------------------------------

class ModelError(CropcastError):
    pass


class SpecError(ModelError):
    """Classifier kind or hyperparameters out of bounds."""


class DegenerateDataError(ModelError):
    """Training data cannot support fitting (e.g. single class)."""


class InputError(ModelError):
    """A prediction input is unusable (e.g. non-finite feature)."""


class RankRangeError(ModelError):
    """Requested top-k depth outside [1, number of classes]."""


class LabelError(ModelError):
    """Evaluation set contains a label the model has never seen."""


class ModelFormatError(ModelError):
    """Model file is corrupt or not a model file."""


class ModelVersionError(ModelFormatError):
    def __init__(self, found: int, supported: int):
        super().__init__(f"model file version {found}, supported version {supported}")
        self.found = found
        self.supported = supported


class BenchmarkError(ModelError):
    """Fit or evaluation failure, annotated with the algorithm name."""

    def __init__(self, algorithm: str, message: str):
        super().__init__(f"{algorithm}: {message}")
        self.algorithm = algorithm


# -- ledger ----------------------------------------------------------------

class LedgerError(CropcastError):
    pass


class EncodeError(LedgerError):
    pass


class DecodeError(LedgerError):
    pass


class UnknownFunctionError(DecodeError):
    """Call data selector does not name a known contract function."""


class MalformedCallDataError(DecodeError):
    """Call data length or layout is inconsistent."""


class CallDataEncodingError(DecodeError):
    """Crop name bytes are not valid UTF-8."""


class OutOfGasError(LedgerError):
    pass


class TimestampOrderError(LedgerError):
    """Submitted timestamp earlier than the chain tip."""


class PredictionIndexError(LedgerError):
    """Requested prediction index beyond the stored count."""


class ChainLoadError(LedgerError):
    def __init__(self, byte_offset: int, message: str):
        super().__init__(f"byte offset {byte_offset}: {message}")
        self.byte_offset = byte_offset


class ChainTamperError(LedgerError):
    """Persisted chain failed verification on open."""


# -- telemetry -------------------------------------------------------------

class TelemetryError(CropcastError):
    pass


class SimulatorConfigError(TelemetryError):
    pass


class WindowError(TelemetryError):
    """Aggregation window empty or larger than available readings."""


# -- service ---------------------------------------------------------------

class ServiceError(CropcastError):
    pass
