#include "doctest.h"
#include "testutil.hpp"
