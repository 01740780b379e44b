# Groebner bases, graded linear algebra and colon ideals
