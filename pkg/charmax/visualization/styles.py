"""
Colour scheme and styling utilities for the SVG histograms.
"""

from typing import Tuple

from matplotlib.figure import Figure

# Parity colours
EVEN_COLOR = "#2374f7"
ODD_COLOR = "#f74823"
ALL_COLOR = "#686a5f"

INK = "#0d1b2a"
PAPER = "#ffffff"
GRID = "#686a5f"


def apply_axis_style(ax, apply_grid=True):
    """
    Apply the light publication style to a matplotlib axis.

    Args:
        ax: Matplotlib axis object
        apply_grid: If True, adds a dashed grid under the bars
    """
    ax.set_facecolor(PAPER)

    for spine in ("top", "right"):
        ax.spines[spine].set_visible(False)
    for spine in ("left", "bottom"):
        ax.spines[spine].set_color(INK)
        ax.spines[spine].set_linewidth(0.8)

    ax.tick_params(colors=INK, which="both", direction="out", length=3, width=0.8)
    ax.xaxis.label.set_color(INK)
    ax.yaxis.label.set_color(INK)

    if apply_grid:
        ax.set_axisbelow(True)
        ax.grid(True, color=GRID, alpha=0.25, linestyle="--", linewidth=0.5)


def style_legend(legend, framealpha=0.9):
    """
    Apply the house style to a legend.

    Args:
        legend: Matplotlib legend object
        framealpha: Transparency of legend background (0-1)
    """
    if legend:
        frame = legend.get_frame()
        frame.set_facecolor(PAPER)
        frame.set_edgecolor(GRID)
        frame.set_alpha(framealpha)
        frame.set_linewidth(0.8)
        for text in legend.get_texts():
            text.set_color(INK)


def create_figure(figsize: Tuple[float, float] = (8, 5)):
    """
    Create a standalone figure with one styled axis.

    The figure is not registered with pyplot, so no GUI backend is touched.

    Args:
        figsize: Figure size as (width, height) in inches

    Returns:
        fig, ax
    """
    fig = Figure(figsize=figsize, facecolor=PAPER)
    ax = fig.add_subplot(1, 1, 1)
    apply_axis_style(ax)
    return fig, ax
