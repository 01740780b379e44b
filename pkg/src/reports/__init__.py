# Analysis reports and the conjecture harness
