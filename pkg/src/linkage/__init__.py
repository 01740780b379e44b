# Linkage of perfect ideals
