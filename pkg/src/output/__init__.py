from .base import BaseWriter, RunResult
from .loader import load_writer, load_writers
