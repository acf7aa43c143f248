from .csv_export import CoefficientWriter, CsvTableWriter, OracleComparisonWriter, ResidualWriter
from .excel_report import VerificationWorkbook
from .json_lines import JsonLinesWriter, constant_record
from .report_manager import ReportManager
