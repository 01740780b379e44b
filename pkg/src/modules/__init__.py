# Presented graded modules, resolutions, Ext, duals and classification
