"""Tests for fbiharm"""
