"""Image contextualization pipeline and evaluation toolkit.

Answers the five meta-context questions of image verification
(Provenance, Source, Date, Location, Motivation) by retrieving open-web
evidence for an image and prompting a pluggable model backend, and scores
predictions with an assignment-based metric suite.
"""

__version__ = "0.1.0"
