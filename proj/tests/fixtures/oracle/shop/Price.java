package shop;

public class Price {
    double amount;
    String currency;

    double converted(double rate) {
        return amount * rate;
    }
}
