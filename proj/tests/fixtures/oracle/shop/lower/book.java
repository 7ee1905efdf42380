package shop.lower;

class book {
    int pages;
}
