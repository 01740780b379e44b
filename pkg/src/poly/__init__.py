# Polynomial rings over Q with a chosen monomial order
