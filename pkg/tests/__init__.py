"""Tests for shadowlab package"""
