#pragma once

#include "kaleido/algebra.hpp"
#include "kaleido/catalog.hpp"
#include "kaleido/compose.hpp"
#include "kaleido/designs.hpp"
#include "kaleido/error.hpp"
#include "kaleido/exhaustive.hpp"
#include "kaleido/io.hpp"
#include "kaleido/schema.hpp"
#include "kaleido/search.hpp"
#include "kaleido/tables.hpp"
