#pragma once

#include "rectpart/bounds.hpp"
#include "rectpart/geometry.hpp"
#include "rectpart/instance_gen.hpp"
#include "rectpart/io.hpp"
#include "rectpart/oracle.hpp"
#include "rectpart/partition_dc.hpp"
#include "rectpart/partition_mdc.hpp"
#include "rectpart/svg.hpp"
