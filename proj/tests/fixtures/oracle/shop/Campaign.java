package shop;

public class Campaign {
    private final double rate;

    Campaign(double rate) {
        this.rate = rate;
    }

    public double getRate() {
        return rate;
    }
}
