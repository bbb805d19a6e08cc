"""
Services Package
Wrappers around the third-party solvers and the file formats.
"""

from .export_service import ExportService, get_export_service
from .flow_service import FlowService, get_flow_service

__all__ = ['ExportService', 'get_export_service', 'FlowService', 'get_flow_service']
