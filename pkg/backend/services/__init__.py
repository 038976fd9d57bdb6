"""Scan pipeline, case verification, fixture files and command responses"""
