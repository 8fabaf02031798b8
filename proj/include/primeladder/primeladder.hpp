#pragma once

#include "primeladder/conjectures.hpp"
#include "primeladder/constructions.hpp"
#include "primeladder/error.hpp"
#include "primeladder/ladder.hpp"
#include "primeladder/numtheory.hpp"
#include "primeladder/oracle.hpp"
#include "primeladder/partitions.hpp"
#include "primeladder/range_scan.hpp"
