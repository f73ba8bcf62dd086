# Process theory module for emergent-systems