"""Figure rendering for the product-formula experiment artifacts."""
from .figures import (
    CONTOUR_COLUMNS,
    FIDELITY_COLUMNS,
    FIDELITY_STYLE,
    FigureJob,
    build_contour_figure,
    build_fidelity_figure,
    read_columns,
    render,
    render_contour_triptych,
    render_fidelity_lines,
)

__version__ = "0.1.0"

__all__ = [
    "CONTOUR_COLUMNS",
    "FIDELITY_COLUMNS",
    "FIDELITY_STYLE",
    "FigureJob",
    "build_contour_figure",
    "build_fidelity_figure",
    "read_columns",
    "render",
    "render_contour_triptych",
    "render_fidelity_lines",
    "__version__",
]
