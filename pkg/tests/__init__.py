"""Tests for alignment_metrics package."""
