# Command-line front-end for emergent-systems