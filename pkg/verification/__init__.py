# Verification suites for emergent-systems