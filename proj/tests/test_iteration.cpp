#include "doctest.h"
TEST_SUITE("iteration") {}
