"""Pydantic schemas for command configuration and emitted tables"""
