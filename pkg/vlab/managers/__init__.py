# Convenience imports for manager classes
from .ReportManager import ReportManager  # noqa: F401
from .RunManager import RunManager  # noqa: F401
