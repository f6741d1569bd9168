"""
RadoKit CLI Module
"""
