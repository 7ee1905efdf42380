package shop;

/**
 * An electronic edition.
 */
public class Ebook extends Book {
    private int sizeKb;

    public Ebook(String id, String name, Price price, int sizeKb) {
        super(id, name, price);
        this.sizeKb = sizeKb;
    }

    String summary(Price other) {
        return name + label() + other.currency + sizeKb;
    }
}
