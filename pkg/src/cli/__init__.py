# Command-line front end, build artifacts and CSV export
from .main import main
