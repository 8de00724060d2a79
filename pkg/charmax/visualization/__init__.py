"""Plot styling for histogram output."""

from charmax.visualization.styles import (
    ALL_COLOR,
    EVEN_COLOR,
    ODD_COLOR,
    apply_axis_style,
    create_figure,
    style_legend,
)

__all__ = [
    "EVEN_COLOR",
    "ODD_COLOR",
    "ALL_COLOR",
    "apply_axis_style",
    "style_legend",
    "create_figure",
]
