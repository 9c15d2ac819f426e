from porosim.geometry.grid import Grid, TimeGrid, make_grid, make_time_grid
from porosim.geometry.field import ScalarField
from porosim.geometry.cylinder import (
    ParabolicCylinder,
    cylinder_nodes,
    sup_on_cylinder,
)
from porosim.geometry.field_io import read_field_csv, write_field_csv
