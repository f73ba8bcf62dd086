# Quantum decomposition module for emergent-systems