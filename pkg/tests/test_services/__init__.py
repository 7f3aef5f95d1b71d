# Test services package
