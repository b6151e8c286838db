"""Tests for MCP Search Server."""
