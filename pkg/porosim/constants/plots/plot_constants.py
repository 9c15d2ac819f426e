"""
Colours and figure settings of the SVG output.
"""

SLICE_PALETTE: list[str] = [
    "#3F51B5",
    "#2196F3",
    "#00BCD4",
    "#009688",
    "#4CAF50",
    "#CDDC39",
    "#FFC107",
    "#FF5722",
]
"""Line colours for successive time slices, early to late."""

FREE_BOUNDARY_COLOR: str = "#E91E63"
SINGULAR_POINT_COLOR: str = "#212121"
CONTOUR_COLORMAP: str = "Blues"

MAX_PLOTTED_SLICES: int = 6

FIGURE_SETTINGS_DICT: dict[str, object] = {
    "figsize": (6.4, 4.0),
    "dpi": 100,
}

SVG_SAVE_SETTINGS_DICT: dict[str, object] = {
    "format": "svg",
    "metadata": {"Date": None},
}
"""Dropping the date keeps repeated runs byte-identical."""

SVG_HASH_SALT: str = "porosim"
