# Koszul complexes and Tate resolvents
