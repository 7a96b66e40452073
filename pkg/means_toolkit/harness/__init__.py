# Harness package
