namespace echelon { int dummy_io = 0; }
