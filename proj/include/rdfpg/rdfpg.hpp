#pragma once

#include "rdfpg/error.hpp"
#include "rdfpg/isomorphism.hpp"
#include "rdfpg/mappings.hpp"
#include "rdfpg/pg_json.hpp"
#include "rdfpg/pg_model.hpp"
#include "rdfpg/rdf_model.hpp"
#include "rdfpg/transforms.hpp"
#include "rdfpg/turtle_star.hpp"
