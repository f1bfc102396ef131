# Bot tests package
