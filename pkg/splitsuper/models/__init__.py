# This file makes the models directory a proper Python package
