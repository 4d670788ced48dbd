# Tests for ghmetric
