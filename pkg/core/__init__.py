# Core module for emergent-systems