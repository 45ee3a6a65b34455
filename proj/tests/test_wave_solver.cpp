#include "doctest.h"
TEST_SUITE("wave_solver") {}
