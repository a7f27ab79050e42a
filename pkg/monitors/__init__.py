from .ManifestRecorder import ManifestRecorder as ManifestRecorder
from .ProgressMonitor import ProgressMonitor as ProgressMonitor
