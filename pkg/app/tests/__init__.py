"""
Tests package

Este paquete contiene los tests unitarios, de integración y de propiedades.
"""
