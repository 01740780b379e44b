# Parser module for converting problem files into problem specs
