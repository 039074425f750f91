"""
Test cases for aefair
"""
