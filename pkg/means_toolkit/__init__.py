# Means toolkit package
