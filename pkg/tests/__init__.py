"""Tests for gasket-resistance."""
