from porosim.constants.analysis.analysis_constants import BlowupKind, PointLabel
