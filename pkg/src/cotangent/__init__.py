# Cotangent modules and the Tor comparisons around them
